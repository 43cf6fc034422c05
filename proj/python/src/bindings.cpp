#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dqd/acceptance.hpp"
#include "dqd/error.hpp"
#include "dqd/io.hpp"

namespace py = pybind11;
using namespace dqd;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

TwoQubitState state_from(const py::object& s) {
  if (py::isinstance<py::str>(s)) return make_state(parse_state_spec(s.cast<std::string>()));
  return TwoQubitState(s.cast<Mat4>());
}

py::dict trajectory_dict(const CorrelationTrajectory& ct) {
  const std::size_t n = ct.reports.size();
  std::vector<double> p(n), ds_lo(n), ds_hi(n), pur(n), conc(n), S0(n), T0(n), Tp(n), Tm(n), mine(n);
  std::vector<cplx> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = ct.reports[i];
    p[i] = r.p;
    c[i] = r.c;
    ds_lo[i] = r.bounds.ds_lower;
    ds_hi[i] = r.bounds.ds_upper;
    pur[i] = r.purity;
    conc[i] = r.concurrence;
    S0[i] = r.st.S0;
    T0[i] = r.st.T0;
    Tp[i] = r.st.Tp1;
    Tm[i] = r.st.Tm1;
    mine[i] = r.min_eigenvalue;
  }
  py::dict d;
  d["t"] = to_array(ct.times());
  d["p"] = to_array(p);
  d["c"] = to_array(c);
  d["ds_lower"] = to_array(ds_lo);
  d["ds_upper"] = to_array(ds_hi);
  d["d_lower"] = to_array(ct.rescaled_lower());
  d["d_upper"] = to_array(ct.rescaled_upper());
  d["purity"] = to_array(pur);
  d["g"] = to_array(ct.g());
  d["concurrence"] = to_array(conc);
  d["S0"] = to_array(S0);
  d["T0"] = to_array(T0);
  d["Tp1"] = to_array(Tp);
  d["Tm1"] = to_array(Tm);
  d["min_eigenvalue"] = to_array(mine);
  return d;
}

}  // namespace

PYBIND11_MODULE(_dqdcorr, m) {
  m.doc() = "Hyperfine decoherence of two quantum-dot spin qubits";
  m.attr("__version__") = version();

  static py::exception<Error> py_error(m, "DqdError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py_error;
      py::object inst = err(e.what());
      inst.attr("kind") = to_string(e.kind());
      PyErr_SetObject(py_error.ptr(), inst.ptr());
    }
  });

  py::class_<DotParameters>(m, "DotParameters")
      .def(py::init([](double A, double N, double I, double B, double g) {
             return DotParameters(A, N, I, B, PhysicalConstants(0.6582119569, 57.883818, g));
           }),
           py::arg("A_total") = 83.0, py::arg("N_nuclei") = 1.5e6, py::arg("I_nuclear") = 1.5,
           py::arg("B") = 0.0, py::arg("g_factor") = 0.44)
      .def_property_readonly("A_total", &DotParameters::A_total)
      .def_property_readonly("N_nuclei", &DotParameters::N_nuclei)
      .def_property_readonly("I_nuclear", &DotParameters::I_nuclear)
      .def_property_readonly("B", &DotParameters::B_field)
      .def_property_readonly("alpha", &DotParameters::alpha)
      .def_property_readonly("sigma2", &DotParameters::sigma2)
      .def_property_readonly("zeeman", &DotParameters::zeeman)
      .def("t2star_theory", &DotParameters::t2star_theory)
      .def("validity_window", &DotParameters::validity_window)
      .def("with_field", &DotParameters::with_field);

  m.def("state", [](const std::string& spec) { return make_state(parse_state_spec(spec)).rho(); },
        py::arg("spec"), "Density matrix for a state spec such as 'werner:p=0.33'.");

  m.def(
      "channel",
      [](const DotParameters& dot, const std::vector<double>& times, const std::string& quadrature) {
        ChannelTrajectory tr;
        if (quadrature == "radial") {
          tr = compute_channel(dot, times);
        } else if (quadrature == "cartesian") {
          tr = compute_channel(dot, times, build_quadrature(dot, times.empty() ? 0.0 : times.back()));
        } else {
          throw Error(ErrorKind::Usage, "quadrature must be radial or cartesian");
        }
        return py::make_tuple(to_array(tr.p), to_array(tr.c));
      },
      py::arg("dot"), py::arg("times"), py::arg("quadrature") = "radial",
      "Single-dot channel (p, c) on the given times; c in the lab frame.");

  m.def(
      "evolve",
      [](const py::object& rho0, const DotParameters& dot, const std::vector<double>& times,
         bool swap_pairing) {
        EvolveOptions o;
        o.pairing = swap_pairing ? UpperPairing::Swapped : UpperPairing::AsPrinted;
        const auto ct = evolve(state_from(rho0), compute_channel(dot, times), o);
        py::dict d = trajectory_dict(ct);
        py::list kinks;
        for (const auto& k : find_g_crossings(ct)) kinks.append(k.t_cross);
        d["kink_times"] = kinks;
        return d;
      },
      py::arg("state"), py::arg("dot"), py::arg("times"), py::arg("swap_pairing") = false);

  m.def("discord_bounds", [](const py::object& rho) {
    const auto b = discord_bounds(state_from(rho));
    py::dict d;
    d["ds_lower"] = b.ds_lower;
    d["ds_upper"] = b.ds_upper;
    d["d_lower"] = b.rescaled_lower;
    d["d_upper"] = b.rescaled_upper;
    d["coincide"] = b.coincide;
    return d;
  });
  m.def("concurrence", [](const py::object& rho) { return concurrence(state_from(rho)); });
  m.def("g_ratio", [](const py::object& rho) { return g_ratio(state_from(rho)); });
  m.def("rescaled_discord", &rescaled_discord, py::arg("ds"), py::arg("purity"));

  m.def(
      "M_of_B",
      [](const py::object& rho0, double B, double window) {
        return M_of_B(state_from(rho0), DotParameters(), B, window).lower;
      },
      py::arg("state"), py::arg("B"), py::arg("window") = 20.0);

  m.def("short_grid", &short_grid, py::arg("t_max") = 20.0, py::arg("step") = 0.02);
  m.def("long_grid", &long_grid, py::arg("t_max") = 12000.0);

  m.def(
      "verify",
      [](const std::vector<int>& only) {
        AcceptanceOptions o;
        o.only = only;
        std::vector<CriterionResult> res;
        {
          py::gil_scoped_release release;
          res = run_acceptance(o);
        }
        py::list out;
        for (const auto& r : res) out.append(py::make_tuple(r.id, r.name, r.pass, r.detail));
        return out;
      },
      py::arg("only") = std::vector<int>{});
}

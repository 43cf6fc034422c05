// dqd: command-line front end (evolve, sweep, verify).
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "dqd/acceptance.hpp"
#include "dqd/error.hpp"
#include "dqd/io.hpp"

namespace {

using namespace dqd;

struct Flags {
  std::string config, state, b, out, quadrature, metric, curve_out;
  double tmax = 0.0, step = 0.0, window = 0.0;
  int m_nodes = 0, q_nodes = 0;
  bool long_grid = false, normalize = false, swap_pairing = false, channel_only = false;
};

// config file first, then any flag given on the command line wins
RunConfig resolve(const CLI::App& sub, const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : read_config(f.config);
  auto given = [&](const char* name) {
    const CLI::Option* o = sub.get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--state")) c.state = f.state;
  if (given("--b")) {
    c.B = parse_field_list(f.b);
    if (c.B.empty()) throw Error(ErrorKind::Usage, "empty B list");
  }
  if (given("--tmax")) c.t_max = f.tmax;
  if (given("--step")) c.step = f.step;
  if (given("--long-grid")) c.long_grid = f.long_grid;
  if (given("--quadrature")) c.quadrature = f.quadrature;
  if (given("--m-nodes")) c.m_nodes = f.m_nodes;
  if (given("--q-nodes")) c.q_nodes = f.q_nodes;
  if (given("--out")) c.output = f.out;
  if (given("--normalize")) c.normalize = f.normalize;
  if (given("--swap-pairing")) c.swap_pairing = f.swap_pairing;
  if (given("--metric")) c.metric = f.metric;
  if (given("--window")) c.window = f.window;
  return c;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorKind::Usage, "cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_evolve(const CLI::App& sub, const Flags& f) {
  const RunConfig c = resolve(sub, f);
  if (c.B.size() != 1) throw Error(ErrorKind::Usage, "evolve takes exactly one field value");
  if (c.quadrature != "radial" && c.quadrature != "cartesian")
    throw Error(ErrorKind::Usage, "quadrature must be radial or cartesian");
  const TwoQubitState rho0 = make_state(parse_state_spec(c.state));
  const DotParameters dot = c.dot(c.B[0]);
  const auto grid = c.grid();
  const EvolveOptions eo = c.evolve_options();

  ChannelTrajectory traj;
  std::function<std::optional<double>(double)> g_at;
  std::unique_ptr<ChannelModel> model;
  if (c.quadrature == "radial") {
    model = std::make_unique<ChannelModel>(dot, grid.back());
    traj = model->trajectory(grid);
    g_at = g_evaluator(rho0, *model, eo);
  } else {
    traj = compute_channel(dot, grid, build_quadrature(dot, grid.back(), c.m_nodes, c.q_nodes));
  }

  Output out(c.output);
  if (f.channel_only) {
    write_header(out.os(), c, {"channel " + std::string(c.quadrature)});
    write_channel_csv(out.os(), traj);
    return 0;
  }
  const auto ct = evolve(rho0, traj, eo);
  std::string kinks;
  for (const auto& k : find_g_crossings(ct, g_at)) kinks += (kinks.empty() ? "" : ";") + fmt(k.t_cross);
  write_header(out.os(), c,
               {"state " + describe(parse_state_spec(c.state)), "kink_times_ns=" + kinks,
                std::string("normalized=") + (c.normalize ? "yes" : "no")});
  write_trajectory_csv(out.os(), ct, c.normalize);
  return 0;
}

int cmd_sweep(const CLI::App& sub, const Flags& f) {
  const RunConfig c = resolve(sub, f);
  if (c.B.empty()) throw Error(ErrorKind::Usage, "sweep needs a B list");
  SweepOptions so;
  so.window = c.window;
  so.step = c.step;
  so.evolve = c.evolve_options();
  CalibrationQuantity q = CalibrationQuantity::M;
  if (c.metric == "M") {
    so.g_extrema = so.kinks = so.esd = false;
  } else if (c.metric == "g-extrema") {
    so.M = so.kinks = so.esd = false;
    q = CalibrationQuantity::GMaxValue;
  } else if (c.metric == "esd") {
    so.M = so.g_extrema = so.kinks = false;
  } else if (c.metric == "kinks") {
    so.M = so.g_extrema = so.esd = false;
  } else if (c.metric == "longtime") {
    so.M = so.g_extrema = so.kinks = so.esd = false;
    so.longtime = true;
    q = CalibrationQuantity::DLongtime;
  } else if (c.metric != "all") {
    throw Error(ErrorKind::Usage, "metric must be one of all, M, g-extrema, esd, kinks, longtime");
  }
  const TwoQubitState rho0 = make_state(parse_state_spec(c.state));
  const auto table = sweep(rho0, c.dot(), c.B, so);

  Output out(c.output);
  write_header(out.os(), c, {"state " + describe(parse_state_spec(c.state)), "metric " + c.metric});
  write_sweep_csv(out.os(), table);
  if (!f.curve_out.empty()) {
    Output cv(f.curve_out);
    write_header(cv.os(), c, {"calibration curve"});
    write_curve_csv(cv.os(), curve_from_sweep(table, q));
  }
  return 0;
}

int cmd_verify(const std::vector<int>& only, std::uint64_t seed) {
  AcceptanceOptions o;
  o.only = only;
  o.seed = seed;
  std::cout << "# dqdcorr " << version() << " acceptance\n" << std::flush;
  int failed = 0;
  const auto res = run_acceptance(o, [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  });
  std::cout << "# " << res.size() - failed << "/" << res.size() << " passed\n";
  return failed ? 4 : 0;
}

void add_common(CLI::App* s, Flags& f) {
  s->add_option("--config", f.config, "JSON run configuration; flags override it");
  s->add_option("--state", f.state, "initial state, e.g. bell:psi-, werner:p=0.33, belldiag:a=0.4,b=0.4");
  s->add_option("--out", f.out, "output CSV path ('-' for stdout)");
  s->add_option("--step", f.step, "time step in ns");
  s->add_flag("--swap-pairing", f.swap_pairing, "pair K_x with L_x in the upper bound");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperfine decoherence of two quantum-dot spin qubits: discord, entanglement, magnetometry"};
  app.set_version_flag("--version", std::string(dqd::version()));
  app.require_subcommand(1);

  Flags f;
  auto* ev = app.add_subcommand("evolve", "time evolution of one initial state at one field");
  add_common(ev, f);
  ev->add_option("--b", f.b, "magnetic field in Tesla");
  ev->add_option("--tmax", f.tmax, "final time in ns");
  ev->add_flag("--long-grid", f.long_grid, "0-50 ns at the fine step, then 2 ns steps up to tmax");
  ev->add_flag("--normalize", f.normalize, "divide the rescaled discord columns by their t=0 values");
  ev->add_option("--quadrature", f.quadrature, "radial (default) or cartesian");
  ev->add_option("--m-nodes", f.m_nodes, "cartesian: Gauss-Hermite nodes for m");
  ev->add_option("--q-nodes", f.q_nodes, "cartesian: Gauss-Laguerre nodes for the transverse invariant");
  ev->add_flag("--channel", f.channel_only, "write the single-dot channel (t, p, c) instead");

  auto* sw = app.add_subcommand("sweep", "field sweep of calibration quantities");
  add_common(sw, f);
  sw->add_option("--b", f.b, "fields in Tesla: start:stop:step or a comma list");
  sw->add_option("--metric", f.metric, "all, M, g-extrema, esd, kinks, longtime");
  sw->add_option("--window", f.window, "M integration window in ns");
  sw->add_option("--curve-out", f.curve_out, "also write the two-column calibration curve here");

  std::vector<int> only;
  std::uint64_t seed = dqd::AcceptanceOptions{}.seed;
  auto* vf = app.add_subcommand("verify", "run the acceptance checks");
  vf->add_option("--only", only, "criterion numbers to run")->delimiter(',');
  vf->add_option("--seed", seed, "seed for the random-state checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << dqd::error_record(dqd::to_string(dqd::ErrorKind::Usage), e.what()) << std::endl;
    return 2;
  }

  try {
    if (*ev) return cmd_evolve(*ev, f);
    if (*sw) return cmd_sweep(*sw, f);
    if (*vf) return cmd_verify(only, seed);
  } catch (const dqd::Error& e) {
    std::cerr << dqd::error_record(dqd::to_string(e.kind()), e.what()) << std::endl;
    return dqd::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << dqd::error_record("internal", e.what()) << std::endl;
    return 3;
  }
  return 2;
}

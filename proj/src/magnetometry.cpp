#include "dqd/magnetometry.hpp"

#include <algorithm>
#include <cmath>

#include "dqd/error.hpp"
#include "dqd/parallel.hpp"

namespace dqd {

double simpson(const std::vector<double>& t, const std::vector<double>& v) {
  const std::size_t n = t.size();
  if (n != v.size() || n < 2) throw Error(ErrorKind::InvalidParameter, "simpson: need matching samples");
  if (n == 2) return 0.5 * (t[1] - t[0]) * (v[0] + v[1]);
  const double h = (t[n - 1] - t[0]) / static_cast<double>(n - 1);
  std::size_t m = n - 1;  // intervals
  double tail = 0.0;
  if (m % 2 == 1) {
    if (m >= 3) {
      const std::size_t k = n - 4;
      tail = 3.0 * h / 8.0 * (v[k] + 3.0 * v[k + 1] + 3.0 * v[k + 2] + v[k + 3]);
      m -= 3;
      if (m == 0) return tail;
    } else {
      return 0.5 * h * (v[0] + v[1]);
    }
  }
  double s = v[0] + v[m];
  for (std::size_t i = 1; i < m; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
  return h / 3.0 * s + tail;
}

MValue M_from_trajectory(const CorrelationTrajectory& ct, double window) {
  std::vector<double> t, lo, hi;
  for (const auto& r : ct.reports) {
    if (r.t > window * (1.0 + 1e-12)) break;
    t.push_back(r.t);
    lo.push_back(r.bounds.rescaled_lower);
    hi.push_back(r.bounds.rescaled_upper);
  }
  if (t.size() < 3 || std::abs(t.back() - window) > 1e-9 * std::max(1.0, window))
    throw Error(ErrorKind::InvalidParameter, "M: trajectory does not cover the integration window");
  if (!(lo.front() > 1e-15) || !(hi.front() > 1e-15))
    throw Error(ErrorKind::InvalidParameter, "M: initial rescaled discord is zero, normalization undefined");
  return {simpson(t, lo) / lo.front(), simpson(t, hi) / hi.front()};
}

MValue M_of_B(const TwoQubitState& rho0, const DotParameters& dot, double B, double window,
              double step) {
  const auto grid = short_grid(window, step);
  const auto traj = compute_channel(dot.with_field(B), grid);
  return M_from_trajectory(evolve(rho0, traj), window);
}

GExtrema g_extrema(const CorrelationTrajectory& ct, double rel_tol) {
  GExtrema out;
  const auto t = ct.times();
  const auto g = ct.g();
  for (double x : g)
    if (!std::isfinite(x)) return out;
  const auto ex = find_extrema(t, g, rel_tol);
  auto mn = std::find_if(ex.begin(), ex.end(), [](const Extremum& e) { return e.kind == ExtremumKind::Min; });
  if (mn == ex.end()) return out;
  out.min = TimedValue{mn->t, mn->value};
  auto mx = std::find_if(mn, ex.end(), [](const Extremum& e) { return e.kind == ExtremumKind::Max; });
  if (mx != ex.end()) out.max = TimedValue{mx->t, mx->value};
  return out;
}

std::optional<double> esd_time(const std::vector<double>& t, const std::vector<double>& conc, int run,
                               double zero_tol) {
  const std::size_t need = static_cast<std::size_t>(std::max(1, run));
  std::size_t count = 0;
  for (std::size_t i = 0; i < conc.size(); ++i) {
    if (conc[i] <= zero_tol) {
      if (++count >= need) return t[i + 1 - count];
    } else {
      count = 0;
    }
  }
  return std::nullopt;
}

std::optional<double> esd_time(const CorrelationTrajectory& ct, int run, double zero_tol) {
  return esd_time(ct.times(), ct.concurrence(), run, zero_tol);
}

double d_longtime(const TwoQubitState& rho0, const DotParameters& dot, double B, double t0, double t1) {
  const auto grid = uniform_grid(t0, t1, 2.0);
  const ChannelModel model(dot.with_field(B), t1);
  const auto ct = evolve(rho0, model.trajectory(grid));
  const auto d = ct.rescaled_lower();
  double s = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i) s += 0.5 * (d[i] + d[i - 1]) * (grid[i] - grid[i - 1]);
  return s / (grid.back() - grid.front());
}

SweepTable sweep(const TwoQubitState& rho0, const DotParameters& dot, const std::vector<double>& Bs,
                 const SweepOptions& opts) {
  if (Bs.empty()) throw Error(ErrorKind::Usage, "sweep: empty B list");
  for (std::size_t i = 1; i < Bs.size(); ++i)
    if (!(Bs[i] > Bs[i - 1])) throw Error(ErrorKind::InvalidParameter, "sweep: B values must increase strictly");

  double horizon = 0.0;
  if (opts.M || opts.esd || opts.kinks) horizon = std::max(horizon, opts.window);
  if (opts.g_extrema) horizon = std::max(horizon, opts.extrema_window);

  SweepTable table;
  table.rows.resize(Bs.size());
  parallel_for(Bs.size(), [&](std::size_t k) {
    SweepRow row;
    row.B = Bs[k];
    const DotParameters d = dot.with_field(Bs[k]);
    if (horizon > 0.0) {
      const auto grid = short_grid(horizon, opts.step);
      const ChannelModel model(d, horizon);
      const auto ct = evolve(rho0, model.trajectory(grid), opts.evolve);
      if (opts.M) row.M = M_from_trajectory(ct, opts.window);
      if (opts.g_extrema) row.g = g_extrema(ct);
      if (opts.kinks)
        for (const auto& ev : find_g_crossings(ct, g_evaluator(rho0, model, opts.evolve)))
          row.kink_times.push_back(ev.t_cross);
      if (opts.esd) {
        std::vector<double> t, c;
        for (const auto& r : ct.reports) {
          if (r.t > opts.window * (1.0 + 1e-12)) break;
          t.push_back(r.t);
          c.push_back(r.concurrence);
        }
        row.esd = esd_time(t, c);
      }
    }
    if (opts.longtime) row.d_longtime = d_longtime(rho0, dot, Bs[k]);
    table.rows[k] = std::move(row);
  });
  return table;
}

const char* to_string(CalibrationQuantity q) noexcept {
  switch (q) {
    case CalibrationQuantity::M: return "M";
    case CalibrationQuantity::GMaxValue: return "g_max_value";
    case CalibrationQuantity::GMinValue: return "g_min_value";
    case CalibrationQuantity::DLongtime: return "d_longtime";
  }
  return "M";
}

CalibrationCurve make_curve(CalibrationQuantity q, std::vector<double> B, std::vector<double> value) {
  if (B.size() != value.size() || B.size() < 2)
    throw Error(ErrorKind::InvalidParameter, "calibration curve needs at least two knots");
  for (std::size_t i = 1; i < B.size(); ++i)
    if (!(B[i] > B[i - 1])) throw Error(ErrorKind::InvalidParameter, "calibration knots must increase in B");
  CalibrationCurve c{q, std::move(B), std::move(value), false};
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < c.value.size(); ++i) {
    inc = inc && c.value[i] > c.value[i - 1];
    dec = dec && c.value[i] < c.value[i - 1];
  }
  c.monotone = inc || dec;
  return c;
}

CalibrationCurve curve_from_sweep(const SweepTable& table, CalibrationQuantity q) {
  std::vector<double> B, v;
  for (const auto& r : table.rows) {
    std::optional<double> x;
    switch (q) {
      case CalibrationQuantity::M: if (r.M) x = r.M->lower; break;
      case CalibrationQuantity::GMaxValue: if (r.g.max) x = r.g.max->value; break;
      case CalibrationQuantity::GMinValue: if (r.g.min) x = r.g.min->value; break;
      case CalibrationQuantity::DLongtime: x = r.d_longtime; break;
    }
    if (x) {
      B.push_back(r.B);
      v.push_back(*x);
    }
  }
  return make_curve(q, std::move(B), std::move(v));
}

FieldEstimate invert_field(const CalibrationCurve& curve, double measured) {
  if (!curve.monotone)
    throw Error(ErrorKind::InvalidParameter,
                std::string("curve ") + to_string(curve.quantity) +
                    " is not monotone in B; combine the minimum and maximum values instead");
  const auto& v = curve.value;
  const bool inc = v.back() > v.front();
  const double lo = inc ? v.front() : v.back(), hi = inc ? v.back() : v.front();
  if (!(measured >= lo && measured <= hi))
    throw Error(ErrorKind::InvalidParameter, "measured value lies outside the calibration range");
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double a = v[i], b = v[i + 1];
    if ((measured - a) * (measured - b) <= 0.0) {
      FieldEstimate e;
      e.B_lo = curve.B[i];
      e.B_hi = curve.B[i + 1];
      if (measured == a) e.B = e.B_hi = e.B_lo = curve.B[i];
      else if (measured == b) e.B = e.B_lo = e.B_hi = curve.B[i + 1];
      else e.B = curve.B[i] + (curve.B[i + 1] - curve.B[i]) * (measured - a) / (b - a);
      return e;
    }
  }
  throw Error(ErrorKind::Numerical, "invert_field: bracketing failed");
}

}  // namespace dqd

#include "dqd/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dqd/error.hpp"

namespace dqd {

namespace {

using Super = std::array<std::array<cplx, 4>, 4>;  // index 2*i + j over (ket, bra)

Super single_qubit_super(double p, cplx c) {
  Super S{};
  S[0][0] = 1.0 - p;
  S[0][3] = p;
  S[3][0] = p;
  S[3][3] = 1.0 - p;
  S[1][1] = c;
  S[2][2] = std::conj(c);
  return S;
}

void check_cp(double p, cplx c, double tol) {
  if (!(p >= -tol && p <= 1.0 + tol) || !(std::abs(c) <= 1.0 - p + tol)) {
    std::ostringstream os;
    os << "channel parameters are not completely positive: p = " << p << ", |c| = " << std::abs(c);
    throw Error(ErrorKind::CpViolation, os.str());
  }
}

const StateTolerances kEvolvedTol{1e-12, 1e-12, -1e-8};

}  // namespace

TwoQubitState apply_channel(const TwoQubitState& rho0, double pA, cplx cA, double pB, cplx cB,
                            double cp_tol) {
  check_cp(pA, cA, cp_tol);
  check_cp(pB, cB, cp_tol);
  const Super SA = single_qubit_super(pA, cA);
  const Super SB = single_qubit_super(pB, cB);
  const Mat4& r = rho0.rho();
  Mat4 out = Mat4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) {
          cplx acc = 0.0;
          for (int x = 0; x < 2; ++x)
            for (int xp = 0; xp < 2; ++xp) {
              const cplx sa = SA[2 * a + ap][2 * x + xp];
              if (sa == 0.0) continue;
              for (int y = 0; y < 2; ++y)
                for (int yp = 0; yp < 2; ++yp) {
                  const cplx sb = SB[2 * b + bp][2 * y + yp];
                  if (sb == 0.0) continue;
                  acc += sa * sb * r(2 * x + y, 2 * xp + yp);
                }
            }
          out(2 * a + b, 2 * ap + bp) = acc;
        }
  return TwoQubitState(out, rho0.ordering(), kEvolvedTol);
}

TwoQubitState apply_channel(const TwoQubitState& rho0, double p, cplx c, double cp_tol) {
  return apply_channel(rho0, p, c, p, c, cp_tol);
}

std::vector<double> CorrelationTrajectory::times() const {
  std::vector<double> v;
  for (const auto& r : reports) v.push_back(r.t);
  return v;
}
std::vector<double> CorrelationTrajectory::rescaled_lower() const {
  std::vector<double> v;
  for (const auto& r : reports) v.push_back(r.bounds.rescaled_lower);
  return v;
}
std::vector<double> CorrelationTrajectory::rescaled_upper() const {
  std::vector<double> v;
  for (const auto& r : reports) v.push_back(r.bounds.rescaled_upper);
  return v;
}
std::vector<double> CorrelationTrajectory::concurrence() const {
  std::vector<double> v;
  for (const auto& r : reports) v.push_back(r.concurrence);
  return v;
}
std::vector<double> CorrelationTrajectory::g() const {
  std::vector<double> v;
  for (const auto& r : reports) v.push_back(r.g ? *r.g : std::numeric_limits<double>::quiet_NaN());
  return v;
}

CorrelationReport correlation_report(const TwoQubitState& rho, double t, double p, cplx c,
                                     const EvolveOptions& opts) {
  CorrelationReport r;
  r.t = t;
  r.p = p;
  r.c = c;
  r.bell = bell_diagonal_params(rho);
  r.purity = purity(rho);
  r.bounds = discord_bounds(rho, opts.pairing);
  r.g = g_ratio(rho);
  r.concurrence = concurrence(rho);
  r.st = singlet_triplet_weights(rho);
  r.min_eigenvalue = rho.min_eigenvalue();
  return r;
}

namespace {

CorrelationTrajectory evolve_impl(const TwoQubitState& rho0, const ChannelTrajectory& A,
                                  const ChannelTrajectory& B, const EvolveOptions& opts) {
  if (A.times.size() != B.times.size())
    throw Error(ErrorKind::InvalidParameter, "evolve: channel grids differ in length");
  CorrelationTrajectory ct;
  ct.ordering = rho0.ordering();
  ct.reports.reserve(A.times.size());
  for (std::size_t i = 0; i < A.times.size(); ++i) {
    const double t = A.times[i];
    if (std::abs(B.times[i] - t) > 1e-12 * std::max(1.0, t))
      throw Error(ErrorKind::InvalidParameter, "evolve: channel grids differ");
    if (i > 0 && !(t > A.times[i - 1]))
      throw Error(ErrorKind::InvalidParameter, "evolve: times must be strictly increasing");
    cplx ca = A.c[i], cb = B.c[i];
    if (opts.rotating_frame) {
      ca = rotating_frame(ca, t, A.dot);
      cb = rotating_frame(cb, t, B.dot);
    }
    try {
      const TwoQubitState rho = apply_channel(rho0, A.p[i], ca, B.p[i], cb, opts.cp_tol);
      ct.reports.push_back(correlation_report(rho, t, A.p[i], A.c[i], opts));
    } catch (const Error& e) {
      std::ostringstream os;
      os << e.what() << " (time index " << i << ", t = " << t << " ns)";
      throw Error(e.kind(), os.str());
    }
  }
  return ct;
}

}  // namespace

CorrelationTrajectory evolve(const TwoQubitState& rho0, const ChannelTrajectory& traj,
                             const EvolveOptions& opts) {
  return evolve_impl(rho0, traj, traj, opts);
}

CorrelationTrajectory evolve(const TwoQubitState& rho0, const ChannelTrajectory& trajA,
                             const ChannelTrajectory& trajB, const EvolveOptions& opts) {
  return evolve_impl(rho0, trajA, trajB, opts);
}

std::function<std::optional<double>(double)> g_evaluator(const TwoQubitState& rho0,
                                                         const ChannelModel& model,
                                                         const EvolveOptions& opts) {
  return [rho0, &model, opts](double t) -> std::optional<double> {
    const ChannelPoint cp = model.evaluate(t);
    const cplx c = opts.rotating_frame ? rotating_frame(cp.c, t, model.dot()) : cp.c;
    return g_ratio(apply_channel(rho0, cp.p, c, opts.cp_tol));
  };
}

const char* to_string(CrossingDirection d) noexcept {
  return d == CrossingDirection::AboveToBelow ? "above-to-below" : "below-to-above";
}

namespace {

int band_sign(double g, double tol) {
  if (std::isnan(g)) return 0;
  const double d = g - 1.0;
  if (std::abs(d) <= tol) return 0;
  return d > 0 ? 1 : -1;
}

// one-sided slope from the two samples on the given side of t
double side_slope(const std::vector<double>& t, const std::vector<double>& v, double tc, bool left) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  std::size_t k = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), tc) - t.begin());
  if (left) {
    if (k < 2) return std::numeric_limits<double>::quiet_NaN();
    return (v[k - 1] - v[k - 2]) / (t[k - 1] - t[k - 2]);
  }
  if (k + 1 >= n) return std::numeric_limits<double>::quiet_NaN();
  return (v[k + 1] - v[k]) / (t[k + 1] - t[k]);
}

}  // namespace

std::vector<KinkEvent> find_g_crossings(const CorrelationTrajectory& ct,
                                        const std::function<std::optional<double>(double)>& g_at,
                                        double touch_tol) {
  const std::vector<double> t = ct.times();
  const std::vector<double> g = ct.g();
  const std::vector<double> d = ct.rescaled_lower();
  std::vector<KinkEvent> out;

  int prev_sign = 0;
  std::size_t prev_idx = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int s = band_sign(g[i], touch_tol);
    if (s == 0) continue;
    if (prev_sign != 0 && s != prev_sign) {
      double lo = t[prev_idx], hi = t[i];
      double tc;
      if (g_at) {
        const int s_lo = prev_sign;
        while (hi - lo > 1e-6) {
          const double mid = 0.5 * (lo + hi);
          const auto gm = g_at(mid);
          const int sm = gm ? (*gm > 1.0 ? 1 : (*gm < 1.0 ? -1 : 0)) : 0;
          if (sm == 0) {
            lo = hi = mid;
            break;
          }
          if (sm == s_lo) lo = mid;
          else hi = mid;
        }
        tc = 0.5 * (lo + hi);
      } else {
        const double g0 = g[prev_idx] - 1.0, g1 = g[i] - 1.0;
        tc = lo + (hi - lo) * g0 / (g0 - g1);
      }
      KinkEvent ev;
      ev.t_cross = tc;
      ev.direction = prev_sign > 0 ? CrossingDirection::AboveToBelow : CrossingDirection::BelowToAbove;
      ev.slope_jump = side_slope(t, d, tc, false) - side_slope(t, d, tc, true);
      out.push_back(ev);
    }
    prev_sign = s;
    prev_idx = i;
  }
  return out;
}

std::vector<Extremum> find_extrema(const std::vector<double>& t, const std::vector<double>& v,
                                   double rel_tol) {
  const std::size_t n = v.size();
  if (t.size() != n) throw Error(ErrorKind::InvalidParameter, "find_extrema: size mismatch");
  std::vector<Extremum> out;
  if (n < 3) return out;
  double scale = 0.0;
  for (double x : v)
    if (std::isfinite(x)) scale = std::max(scale, std::abs(x));
  const double tol = rel_tol * scale;

  // runs of equal samples
  struct Run {
    std::size_t i0, i1;
    double val;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < n; ++i) {
    if (!runs.empty() && std::abs(v[i] - runs.back().val) <= tol) {
      runs.back().i1 = i;
    } else {
      runs.push_back({i, i, v[i]});
    }
  }
  for (std::size_t k = 1; k + 1 < runs.size(); ++k) {
    const Run& r = runs[k];
    const double lv = runs[k - 1].val, rv = runs[k + 1].val;
    ExtremumKind kind;
    if (r.val > lv && r.val > rv) kind = ExtremumKind::Max;
    else if (r.val < lv && r.val < rv) kind = ExtremumKind::Min;
    else continue;
    Extremum e;
    e.kind = kind;
    if (r.i0 == r.i1) {
      const std::size_t i = r.i0;
      const double x0 = t[i - 1], x1 = t[i], x2 = t[i + 1];
      const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
      // vertex of the parabola through three (possibly non-uniform) points
      const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
      const double a = (d12 - d01) / (x2 - x0);
      if (a != 0.0) {
        const double b = d01 - a * (x0 + x1);
        double xv = -b / (2.0 * a);
        xv = std::clamp(xv, x0, x2);
        e.t = xv;
        e.value = y0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1);
      } else {
        e.t = x1;
        e.value = y1;
      }
    } else {
      e.t = 0.5 * (t[r.i0] + t[r.i1]);
      e.value = r.val;
    }
    out.push_back(e);
  }
  return out;
}

std::optional<Revival> find_revival(const std::vector<double>& t, const std::vector<double>& v,
                                    double min_rise) {
  const auto ex = find_extrema(t, v);
  auto it = std::find_if(ex.begin(), ex.end(), [](const Extremum& e) { return e.kind == ExtremumKind::Min; });
  if (it == ex.end() || v.empty()) return std::nullopt;
  Revival r;
  r.t_dip = it->t;
  r.dip = it->value;
  const double need = min_rise * std::abs(v.front());
  auto mx = std::find_if(it, ex.end(), [](const Extremum& e) { return e.kind == ExtremumKind::Max; });
  if (mx != ex.end()) {
    r.t_peak = mx->t;
    r.peak = mx->value;
    r.interior = true;
  } else {
    // no interior maximum: accept a rise that runs into the end of the window
    const std::size_t last = v.size() - 1;
    if (!(t[last] > r.t_dip) || !(v[last] >= v[last - 1])) return std::nullopt;
    r.t_peak = t[last];
    r.peak = v[last];
    r.interior = false;
  }
  if (!(r.peak - r.dip >= need)) return std::nullopt;
  return r;
}

std::vector<double> uniform_grid(double t0, double t1, double step) {
  if (!(step > 0.0) || !(t1 >= t0))
    throw Error(ErrorKind::InvalidParameter, "uniform_grid: need step > 0 and t1 >= t0");
  const long n = std::lround((t1 - t0) / step);
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) g[static_cast<std::size_t>(k)] = t0 + static_cast<double>(k) * step;
  return g;
}

std::vector<double> short_grid(double t_max, double step) { return uniform_grid(0.0, t_max, step); }

std::vector<double> long_grid(double t_max) {
  std::vector<double> g = uniform_grid(0.0, std::min(50.0, t_max), 0.02);
  if (t_max > 50.0) {
    const std::vector<double> tail = uniform_grid(50.0, t_max, 2.0);
    g.insert(g.end(), tail.begin() + 1, tail.end());
  }
  return g;
}

}  // namespace dqd

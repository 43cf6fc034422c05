#include "dqd/hyperfine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "dqd/error.hpp"
#include "dqd/gauss_rules.hpp"
#include "dqd/parallel.hpp"

namespace dqd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerate = 1e-30;  // ueV^2

struct BlockFreq {
  double w = 0.0;  // rad/ns
  double s = 0.0;  // delta / (hbar omega)
  double f = 0.0;  // V^2 / (hbar omega)^2
};

BlockFreq block_freq(double delta, double V2, double hbar) {
  const double r2 = delta * delta + V2;
  if (r2 < kDegenerate) return {};
  const double r = std::sqrt(r2);
  return {r / hbar, delta / r, V2 / r2};
}

}  // namespace

BlockAmplitudes block_amplitudes(double delta, double V, double t, double hbar) {
  if (!std::isfinite(delta) || !std::isfinite(V) || !(t >= 0.0))
    throw Error(ErrorKind::InvalidParameter, "block_amplitudes: need finite delta, V and t >= 0");
  const double r2 = delta * delta + V * V;
  if (r2 < kDegenerate) return {1.0, 1.0, 0.0};
  const double r = std::sqrt(r2);
  const double ph = r * t / hbar;
  const double co = std::cos(ph), si = std::sin(ph);
  const double sd = delta / r;
  return {cplx(co, -sd * si), cplx(co, sd * si), V * V / r2 * si * si};
}

int required_m_nodes(const DotParameters& dot, double t_max) {
  const double sigma = std::sqrt(dot.sigma2());
  const double rule =
      std::ceil(8.0 * sigma * dot.alpha() * t_max / (2.0 * kPi * dot.constants().hbar()));
  return std::max(257, static_cast<int>(rule));
}

void check_validity(const DotParameters& dot, double t_max) {
  const double window = dot.validity_window();
  if (!(t_max >= 0.0) || t_max > 1.02 * window) {
    std::ostringstream os;
    os << "t_max = " << t_max << " ns lies outside the box-model validity window hbar N/A = "
       << window << " ns";
    throw Error(ErrorKind::Validity, os.str());
  }
  if (dot.N_nuclei() < 100.0)
    throw Error(ErrorKind::Validity,
                "Gaussian bath statistics need N >= 100; small-N exact sector sums are not provided");
}

BathQuadrature build_quadrature(const DotParameters& dot, double t_max, int m_nodes, int q_nodes) {
  check_validity(dot, t_max);
  const int nm = std::max(m_nodes, required_m_nodes(dot, t_max));
  const int nq = std::max(q_nodes, kMinQNodes);
  const double sigma = std::sqrt(dot.sigma2());

  BathQuadrature q;
  q.t_max = t_max;
  GaussRule gh = gauss_hermite_normal(nm);
  GaussRule gl = gauss_laguerre(nq);
  double sm = 0.0, sq = 0.0;
  for (double w : gh.w) sm += w;
  for (double w : gl.w) sq += w;
  for (int i = 0; i < nm; ++i) {
    if (gh.w[i] == 0.0) continue;
    q.m_nodes.push_back(sigma * gh.x[i]);
    q.m_weights.push_back(gh.w[i] / sm);
  }
  for (int j = 0; j < nq; ++j) {
    q.q_nodes.push_back(2.0 * dot.sigma2() * gl.x[j]);
    q.q_weights.push_back(gl.w[j] / sq);
  }
  return q;
}

// ---------------------------------------------------------------------------
// mode evaluation

namespace {

constexpr std::size_t kChunk = 64;

// sum over modes at one time; fixed order
ChannelPoint sum_direct(const std::vector<ChannelMode>& modes, double t) {
  double cr = 0.0, ci = 0.0, p = 0.0;
  for (const auto& m : modes) {
    const double s1 = std::sin(m.w1 * t), c1 = std::cos(m.w1 * t);
    const double s2 = std::sin(m.w2 * t), c2 = std::cos(m.w2 * t);
    cr += m.K0 * c1 * c2 - m.K12 * s1 * s2;
    ci -= m.K1 * s1 * c2 + m.K2 * c1 * s2;
    p += m.Kf1 * s1 * s1 + m.Kf2 * s2 * s2;
  }
  return {0.5 * p, cplx(cr, ci)};
}

bool uniform_run(const std::vector<double>& t, std::size_t i0, std::size_t i1, double& dt) {
  if (i1 - i0 < 3) return false;
  dt = t[i0 + 1] - t[i0];
  if (!(dt > 0.0)) return false;
  for (std::size_t i = i0 + 2; i < i1; ++i) {
    const double expect = t[i0] + static_cast<double>(i - i0) * dt;
    if (std::abs(t[i] - expect) > 1e-14 * std::max(1.0, std::abs(t[i]))) return false;
  }
  return true;
}

void eval_chunk(const std::vector<ChannelMode>& modes, const std::vector<double>& t,
                std::size_t i0, std::size_t i1, std::vector<double>& p, std::vector<cplx>& c) {
  double dt = 0.0;
  if (!uniform_run(t, i0, i1, dt)) {
    for (std::size_t i = i0; i < i1; ++i) {
      const ChannelPoint cp = sum_direct(modes, t[i]);
      p[i] = cp.p;
      c[i] = cp.c;
    }
    return;
  }
  const std::size_t n = i1 - i0;
  std::array<double, kChunk> cr{}, ci{}, pp{};
  const double t0 = t[i0];
  for (const auto& m : modes) {
    double z1r = std::cos(m.w1 * t0), z1i = std::sin(m.w1 * t0);
    double z2r = std::cos(m.w2 * t0), z2i = std::sin(m.w2 * t0);
    const double r1r = std::cos(m.w1 * dt), r1i = std::sin(m.w1 * dt);
    const double r2r = std::cos(m.w2 * dt), r2i = std::sin(m.w2 * dt);
    for (std::size_t k = 0; k < n; ++k) {
      cr[k] += m.K0 * z1r * z2r - m.K12 * z1i * z2i;
      ci[k] -= m.K1 * z1i * z2r + m.K2 * z1r * z2i;
      pp[k] += m.Kf1 * z1i * z1i + m.Kf2 * z2i * z2i;
      const double a = z1r * r1r - z1i * r1i;
      z1i = z1r * r1i + z1i * r1r;
      z1r = a;
      const double b = z2r * r2r - z2i * r2i;
      z2i = z2r * r2i + z2i * r2r;
      z2r = b;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    p[i0 + k] = 0.5 * pp[k];
    c[i0 + k] = cplx(cr[k], ci[k]);
  }
}

}  // namespace

ChannelPoint evaluate_modes(const std::vector<ChannelMode>& modes, double t) {
  return sum_direct(modes, t);
}

void evaluate_modes(const std::vector<ChannelMode>& modes, const std::vector<double>& times,
                    std::vector<double>& p, std::vector<cplx>& c) {
  const std::size_t n = times.size();
  p.assign(n, 0.0);
  c.assign(n, cplx(0.0));
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  parallel_for(nchunks, [&](std::size_t k) {
    const std::size_t i0 = k * kChunk;
    const std::size_t i1 = std::min(n, i0 + kChunk);
    eval_chunk(modes, times, i0, i1, p, c);
  });
}

namespace {

void normalize(std::vector<ChannelMode>& modes) {
  double total = 0.0;
  for (const auto& m : modes) total += m.K0;
  if (!(total > 0.0)) throw Error(ErrorKind::Numerical, "channel quadrature has zero total weight");
  for (auto& m : modes) {
    m.K0 /= total;
    m.K12 /= total;
    m.K1 /= total;
    m.K2 /= total;
    m.Kf1 /= total;
    m.Kf2 /= total;
  }
}

ChannelMode node_mode(double w, const BlockFreq& b1, const BlockFreq& b2) {
  ChannelMode m;
  m.w1 = b1.w;
  m.w2 = b2.w;
  m.K0 = w;
  m.K12 = w * b1.s * b2.s;
  m.K1 = w * b1.s;
  m.K2 = w * b2.s;
  m.Kf1 = w * b1.f;
  m.Kf2 = w * b2.f;
  return m;
}

void check_channel(const ChannelTrajectory& tr) {
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    if (std::abs(tr.c[i]) > 1.0 - tr.p[i] + 1e-4 || tr.p[i] < -1e-4 || tr.p[i] > 1.0 + 1e-4) {
      std::ostringstream os;
      os << "channel violates complete positivity at t = " << tr.times[i] << " ns (p = " << tr.p[i]
         << ", |c| = " << std::abs(tr.c[i]) << "); quadrature is under-resolved";
      throw Error(ErrorKind::Numerical, os.str());
    }
  }
}

double grid_max(const std::vector<double>& times) {
  double tmax = 0.0;
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw Error(ErrorKind::InvalidParameter, "time grid must be finite and nonnegative");
    tmax = std::max(tmax, t);
  }
  return tmax;
}

}  // namespace

std::vector<ChannelMode> cartesian_modes(const DotParameters& dot, const BathQuadrature& quad, bool clip_edges) {
  const double alpha = dot.alpha();
  const double Om = dot.zeeman();
  const double hbar = dot.constants().hbar();
  std::vector<ChannelMode> modes;
  modes.reserve(quad.m_nodes.size() * quad.q_nodes.size());
  for (std::size_t i = 0; i < quad.m_nodes.size(); ++i) {
    const double m = quad.m_nodes[i];
    const double d1 = 0.5 * (-Om + alpha * (m + 0.5));
    const double d2 = 0.5 * (-Om + alpha * (m - 0.5));
    for (std::size_t j = 0; j < quad.q_nodes.size(); ++j) {
      const double Q = quad.q_nodes[j];
      // unclipped unless the block energy itself would turn imaginary
      auto v2of = [&](double d, double q) {
        const double v = 0.25 * alpha * alpha * q;
        return (clip_edges || d * d + v <= 0.0) ? std::max(0.0, v) : v;
      };
      modes.push_back(node_mode(quad.m_weights[i] * quad.q_weights[j], block_freq(d1, v2of(d1, Q - m), hbar),
                                block_freq(d2, v2of(d2, Q + m), hbar)));
    }
  }
  normalize(modes);
  return modes;
}

ChannelTrajectory compute_channel(const DotParameters& dot, const std::vector<double>& times,
                                  const BathQuadrature& quad, bool clip_edges) {
  const double tmax = grid_max(times);
  if (tmax > quad.t_max * (1.0 + 1e-12))
    throw Error(ErrorKind::InvalidParameter, "quadrature was built for a shorter t_max than the grid");
  ChannelTrajectory tr;
  tr.times = times;
  tr.dot = dot;
  evaluate_modes(cartesian_modes(dot, quad, clip_edges), times, tr.p, tr.c);
  check_channel(tr);
  return tr;
}

// ---------------------------------------------------------------------------
// radial path

namespace {

// Roots of a u^2 + b u + c = 0 (a != 0), ascending; false if complex.
bool quad_roots(double a, double b, double c, double& r1, double& r2) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return false;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    r1 = r2 = 0.0;
    return true;
  }
  r1 = q / a;
  r2 = c / q;
  if (r1 > r2) std::swap(r1, r2);
  return true;
}

struct RadialBuilder {
  double alpha, Om, s2, hbar, t_max;
  bool clip;
  double sliver_phase;
  const GaussRule& gl;
  const GaussRule& gls;
  std::vector<ChannelMode>& out;

  // u = 1 - nu; 4 V1^2 and 4 V2^2 as functions of u at fixed R
  static double q1(double R, double u, double alpha, double Om) {
    return -R * R * u * u + (2.0 * R * R - alpha * R) * u + alpha * (R - Om);
  }
  static double q2(double R, double u, double alpha, double Om) {
    return -R * R * u * u + (2.0 * R * R + alpha * R) * u - alpha * (R - Om);
  }

  // Calls fn(u, weight) for a rule on [ua, ub] against e^{-kappa u} du.
  template <class Fn>
  void nu_nodes(double ua, double ub, double kappa, const GaussRule& rule, Fn&& fn) const {
    static constexpr double kEdges[] = {0.5, 1.5, 3.5, 7.5, 15.5, 31.5, 63.5};
    auto panel = [&](double a, double b) {
      const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
      for (std::size_t k = 0; k < rule.x.size(); ++k) {
        const double u = mid + h * rule.x[k];
        fn(u, h * rule.w[k] * std::exp(-kappa * u));
      }
    };
    if (kappa * (ub - ua) <= 2.0) {
      panel(ua, ub);
      return;
    }
    const double ta = kappa * ua;
    const double tb = std::min(kappa * ub, 63.5);
    if (ta >= tb) return;
    double lo = ta;
    for (double e : kEdges) {
      if (e <= lo) continue;
      const double hi = std::min(e, tb);
      panel(lo / kappa, hi / kappa);
      lo = hi;
      if (lo >= tb) break;
    }
  }

  void add_R(double R, double wR) {
    const double kappa = R * Om / s2;
    const double pref =
        wR * 2.0 * kPi * R * R / std::pow(2.0 * kPi * s2, 1.5) * std::exp(-(R - Om) * (R - Om) / (2.0 * s2));
    if (pref == 0.0) return;

    // unclipped block energies: (2 hbar omega)^2 = R^2 -+ alpha Omega + alpha^2/4
    const double e1sq = 0.25 * (R * R - alpha * Om + 0.25 * alpha * alpha);
    const double e2sq = 0.25 * (R * R + alpha * Om + 0.25 * alpha * alpha);
    const bool fold_all = !clip && e1sq > kDegenerate && e2sq > kDegenerate;

    std::vector<double> cuts{0.0, 2.0};
    double r1, r2;
    if (fold_all) {
    } else if (quad_roots(-R * R, 2.0 * R * R - alpha * R, alpha * (R - Om), r1, r2)) {
      cuts.push_back(r1);
      cuts.push_back(r2);
    }
    if (!fold_all && quad_roots(-R * R, 2.0 * R * R + alpha * R, -alpha * (R - Om), r1, r2)) {
      cuts.push_back(r1);
      cuts.push_back(r2);
    }
    std::sort(cuts.begin(), cuts.end());

    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double ua = std::max(0.0, cuts[k]);
      const double ub = std::min(2.0, cuts[k + 1]);
      if (!(ub > ua)) continue;
      const double um = 0.5 * (ua + ub);
      const bool open1 = fold_all || q1(R, um, alpha, Om) > 0.0;
      const bool open2 = fold_all || q2(R, um, alpha, Om) > 0.0;
      const double floor = fold_all ? -std::numeric_limits<double>::infinity() : 0.0;

      auto blocks = [&](double u, BlockFreq& b1, BlockFreq& b2) {
        const double Fz = R * (1.0 - u);
        const double d1 = 0.5 * (-Fz + 0.5 * alpha);
        const double d2 = 0.5 * (-Fz - 0.5 * alpha);
        const double v1 = open1 ? 0.25 * std::max(0.0, q1(R, u, alpha, Om)) : 0.0;
        const double v2 = open2 ? 0.25 * std::max(0.0, q2(R, u, alpha, Om)) : 0.0;
        b1 = block_freq(d1, v1, hbar);
        b2 = block_freq(d2, v2, hbar);
      };

      if (open1 && open2 && e1sq > kDegenerate && e2sq > kDegenerate) {
        // both frequencies are fixed by R: fold the nu integral into one mode
        const double h1 = std::sqrt(e1sq), h2 = std::sqrt(e2sq);
        ChannelMode m;
        m.w1 = h1 / hbar;
        m.w2 = h2 / hbar;
        nu_nodes(ua, ub, kappa, gl, [&](double u, double w) {
          const double Fz = R * (1.0 - u);
          const double sa = 0.5 * (-Fz + 0.5 * alpha) / h1;
          const double sb = 0.5 * (-Fz - 0.5 * alpha) / h2;
          const double v1 = 0.25 * std::max(floor, q1(R, u, alpha, Om));
          const double v2 = 0.25 * std::max(floor, q2(R, u, alpha, Om));
          const double wn = pref * w;
          m.K0 += wn;
          m.K12 += wn * sa * sb;
          m.K1 += wn * sa;
          m.K2 += wn * sb;
          m.Kf1 += wn * v1 / e1sq;
          m.Kf2 += wn * v2 / e2sq;
        });
        if (m.K0 > 0.0) out.push_back(m);
      } else {
        // frequencies move with u here (d(2 hbar omega)/du ~ R): keep the
        // phase spread per piece below sliver_phase at t_max
        const double spread = R * (ub - ua) * t_max / hbar;
        const int np = std::max(1, static_cast<int>(std::ceil(spread / sliver_phase)));
        const double du = (ub - ua) / np;
        for (int k = 0; k < np; ++k)
          nu_nodes(ua + k * du, ua + (k + 1) * du, kappa, gls, [&](double u, double w) {
            BlockFreq b1, b2;
            blocks(u, b1, b2);
            const double wn = pref * w;
            if (wn > 0.0) out.push_back(node_mode(wn, b1, b2));
          });
      }
    }
  }
};

}  // namespace

ChannelModel::ChannelModel(const DotParameters& dot, double t_max, const RadialOptions& opts)
    : dot_(dot), t_max_(t_max), conjugate_(dot.zeeman() < 0.0) {
  check_validity(dot, t_max);
  const double alpha = dot.alpha();
  const double Om = std::abs(dot.zeeman());
  const double s2 = alpha * alpha * dot.sigma2();
  const double s = std::sqrt(s2);
  const double hbar = dot.constants().hbar();

  const GaussRule gl = gauss_legendre(opts.order);
  const GaussRule gls = gauss_legendre(opts.sliver_order);
  RadialBuilder rb{alpha, Om, s2, hbar, t_max, opts.clip_edges, opts.sliver_phase, gl, gls, modes_};

  const double Rlo = std::max(0.0, Om - opts.r_half_width * s);
  const double Rhi = Om + opts.r_half_width * s;
  double h = opts.panel_s * s;
  if (t_max > 0.0) h = std::min(h, opts.panel_phase * hbar / t_max);
  // Below R0 the ket block is closed for every nu and the integrand changes
  // form, so R0 is a panel edge.
  std::vector<double> edges{Rlo, Rhi};
  const double R0sq = alpha * Om - 0.25 * alpha * alpha;
  if (R0sq > 0.0 && std::sqrt(R0sq) > Rlo && std::sqrt(R0sq) < Rhi) edges.insert(edges.begin() + 1, std::sqrt(R0sq));
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e], b = edges[e + 1];
    const int npan = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    const double hp = (b - a) / npan;
    for (int k = 0; k < npan; ++k) {
      const double mid = a + (k + 0.5) * hp;
      for (std::size_t j = 0; j < gl.x.size(); ++j) rb.add_R(mid + 0.5 * hp * gl.x[j], 0.5 * hp * gl.w[j]);
    }
  }
  normalize(modes_);
}

ChannelPoint ChannelModel::evaluate(double t) const {
  ChannelPoint cp = evaluate_modes(modes_, t);
  if (conjugate_) cp.c = std::conj(cp.c);
  return cp;
}

ChannelTrajectory ChannelModel::trajectory(const std::vector<double>& times) const {
  const double tmax = grid_max(times);
  if (tmax > t_max_ * (1.0 + 1e-12))
    throw Error(ErrorKind::InvalidParameter, "channel model was built for a shorter t_max than the grid");
  ChannelTrajectory tr;
  tr.times = times;
  tr.dot = dot_;
  evaluate_modes(modes_, times, tr.p, tr.c);
  if (conjugate_)
    for (auto& z : tr.c) z = std::conj(z);
  check_channel(tr);
  return tr;
}

ChannelTrajectory compute_channel(const DotParameters& dot, const std::vector<double>& times) {
  return ChannelModel(dot, grid_max(times)).trajectory(times);
}

CpReport verify_channel_cp(const ChannelTrajectory& traj, double tol) {
  CpReport r;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    double m = (1.0 - traj.p[i]) - std::abs(traj.c[i]);
    if (traj.p[i] < 0.0 || traj.p[i] > 1.0) m = std::min({m, traj.p[i], 1.0 - traj.p[i]});
    if (m < r.worst_margin) {
      r.worst_margin = m;
      r.worst_index = i;
      r.worst_time = traj.times[i];
    }
  }
  if (traj.times.empty()) r.worst_margin = 0.0;
  r.pass = r.worst_margin >= -tol;
  return r;
}

cplx rotating_frame(cplx c, double t, const DotParameters& dot) {
  return c * std::polar(1.0, -dot.zeeman() * t / dot.constants().hbar());
}

}  // namespace dqd

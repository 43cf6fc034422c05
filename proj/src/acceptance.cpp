#include "dqd/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <mutex>

#include "dqd/error.hpp"
#include "dqd/parallel.hpp"

namespace dqd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kPi = std::acos(-1.0);

std::string strf(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double sse(const std::vector<double>& t, const std::vector<double>& y, double T) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - std::exp(-(t[i] / T) * (t[i] / T));
    s += r * r;
  }
  return s;
}

}  // namespace

double fit_gaussian_decay(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 3) throw Error(ErrorKind::InvalidParameter, "fit: need samples");
  // coarse log scan for the basin, then golden section
  double best = 0.0, best_v = kInf;
  const double tspan = t.back() - t.front();
  for (int k = 0; k <= 400; ++k) {
    const double T = tspan * std::pow(10.0, -2.0 + 4.0 * k / 400.0);
    const double v = sse(t, y, T);
    if (v < best_v) {
      best_v = v;
      best = T;
    }
  }
  double a = best * std::pow(10.0, -0.01), b = best * std::pow(10.0, 0.01);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = sse(t, y, c), fd = sse(t, y, d);
  while (b - a > 1e-12 * best) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = sse(t, y, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = sse(t, y, d);
    }
  }
  return 0.5 * (a + b);
}

namespace random_states {

namespace {

cplx cnormal(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::array<double, 4> dirichlet(Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> w{};
  double s = 0.0;
  for (double& x : w) s += (x = e(rng));
  for (double& x : w) x /= s;
  return w;
}

}  // namespace

Mat4 density(Rng& rng) {
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) g(i, k) = cnormal(rng);
  Mat4 r = g * g.adjoint();
  r /= r.trace().real();
  return 0.5 * (r + r.adjoint());
}

Mat4 pure(Rng& rng) {
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = cnormal(rng);
  v.normalize();
  return v * v.adjoint();
}

Mat4 x_state(Rng& rng) {
  const auto p = dirichlet(rng);
  Mat4 r = Mat4::Zero();
  for (int i = 0; i < 4; ++i) r(i, i) = p[i];
  r(0, 3) = std::polar(uniform(rng, 0.0, 1.0) * std::sqrt(p[0] * p[3]), uniform(rng, 0.0, 2.0 * kPi));
  r(1, 2) = std::polar(uniform(rng, 0.0, 1.0) * std::sqrt(p[1] * p[2]), uniform(rng, 0.0, 2.0 * kPi));
  r(3, 0) = std::conj(r(0, 3));
  r(2, 1) = std::conj(r(1, 2));
  return r;
}

Mat4 bell_diagonal(Rng& rng) {
  const auto w = dirichlet(rng);
  const double h = std::sqrt(0.5);
  const Eigen::Vector4cd b[4] = {Eigen::Vector4cd(h, 0, 0, h), Eigen::Vector4cd(h, 0, 0, -h),
                                 Eigen::Vector4cd(0, h, h, 0), Eigen::Vector4cd(0, h, -h, 0)};
  Mat4 r = Mat4::Zero();
  for (int k = 0; k < 4; ++k) r += w[k] * b[k] * b[k].adjoint();
  return r;
}

Eigen::Matrix2cd su2(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double q[4];
  double s = 0.0;
  for (double& x : q) {
    x = n(rng);
    s += x * x;
  }
  s = std::sqrt(s);
  for (double& x : q) x /= s;
  Eigen::Matrix2cd u;
  u << cplx(q[0], q[1]), cplx(q[2], q[3]), cplx(-q[2], q[3]), cplx(q[0], -q[1]);
  return u;
}

Mat4 zero_local_bloch(Rng& rng) {
  const Mat4 u = kron(su2(rng), su2(rng));
  return u * bell_diagonal(rng) * u.adjoint();
}

Mat4 max_entangled_family(Rng& rng) {
  spec::EntFamily e;
  e.a = uniform(rng, 0.0, 0.5);
  e.b = 0.5 - e.a;
  e.alpha = uniform(rng, 0.0, 2.0 * kPi);
  e.beta = uniform(rng, 0.0, 2.0 * kPi);
  return make_state(e).rho();
}

}  // namespace random_states

namespace {

// Aggregates the physicality checks over everything the other criteria compute.
struct Physicality {
  std::mutex mu;
  double worst_cp = kInf;
  std::string worst_cp_where;
  double min_eig = kInf;
  std::string min_eig_where;
  std::size_t channels = 0, states = 0;

  void add(const ChannelTrajectory& tr, const std::string& where) {
    const CpReport r = verify_channel_cp(tr);
    std::lock_guard lk(mu);
    ++channels;
    if (r.worst_margin < worst_cp) {
      worst_cp = r.worst_margin;
      worst_cp_where = strf("%s t=%.4g", where.c_str(), r.worst_time);
    }
  }
  void add(const CorrelationTrajectory& ct, const std::string& where) {
    std::lock_guard lk(mu);
    for (const auto& r : ct.reports) {
      ++states;
      if (r.min_eigenvalue < min_eig) {
        min_eig = r.min_eigenvalue;
        min_eig_where = strf("%s t=%.4g", where.c_str(), r.t);
      }
    }
  }
};

struct Run {
  ChannelTrajectory channel;
  CorrelationTrajectory ct;
};

Run run(const TwoQubitState& rho0, double B, const std::vector<double>& grid, Physicality& phys,
        const std::string& label) {
  const DotParameters dot = DotParameters().with_field(B);
  const ChannelModel model(dot, grid.back());
  Run r{model.trajectory(grid), {}};
  r.ct = evolve(rho0, r.channel);
  const std::string where = strf("%s B=%gT", label.c_str(), B);
  phys.add(r.channel, where);
  phys.add(r.ct, where);
  return r;
}

TwoQubitState singlet() { return make_state(spec::Bell{BellKind::PsiMinus}); }

double fitted_t2star(Physicality& phys, double* p_max = nullptr) {
  const auto grid = short_grid(25.0, 0.02);
  const DotParameters dot = DotParameters().with_field(5.0);
  const ChannelModel model(dot, 25.0);
  const auto tr = model.trajectory(grid);
  phys.add(tr, "T2* B=5T");
  std::vector<double> y(tr.c.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::abs(tr.c[i]);
  if (p_max) *p_max = *std::max_element(tr.p.begin(), tr.p.end());
  return fit_gaussian_decay(grid, y);
}

using Check = std::function<void(CriterionResult&)>;

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  Physicality phys;
  double t2fit = std::numeric_limits<double>::quiet_NaN();

  std::vector<std::pair<std::string, Check>> checks;

  checks.emplace_back("T2* dephasing at 5 T", [&](CriterionResult& r) {
    double pmax = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    t2fit = fitted_t2star(phys, &pmax);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = t2fit >= 12.0 && t2fit <= 12.7 && pmax < 1e-4 && secs < 60.0;
    r.detail = strf("T2*=%.4f ns (band [12.0, 12.7], formula %.4f), max p=%.3e, %.2f s", t2fit,
                    DotParameters().t2star_theory(), pmax, secs);
  });

  checks.emplace_back("kink position, a=b=0.4 at 100 mT", [&](CriterionResult& r) {
    if (std::isnan(t2fit)) t2fit = fitted_t2star(phys);
    const TwoQubitState rho0 = make_state(spec::BellDiagonalAB{0.4, 0.4});
    const DotParameters dot = DotParameters().with_field(0.1);
    const ChannelModel model(dot, 20.0);
    const auto tr = model.trajectory(short_grid());
    const auto ct = evolve(rho0, tr);
    phys.add(tr, "kink B=0.1T");
    phys.add(ct, "kink B=0.1T");
    const auto ev = find_g_crossings(ct, g_evaluator(rho0, model));
    const double estimate = t2fit * std::sqrt(std::log(4.0 / 3.0) / 2.0);
    std::string times;
    for (const auto& e : ev) times += strf("%s%.4f", times.empty() ? "" : ";", e.t_cross);
    r.pass = ev.size() == 1 && std::abs(ev[0].t_cross - 4.67) <= 0.2 &&
             std::abs(estimate - ev[0].t_cross) <= 0.1;
    r.detail = strf("crossings=%zu [%s] ns (target 4.67 +- 0.2), estimate T2* sqrt(ln(4/3)/2)=%.4f ns",
                    ev.size(), times.c_str(), estimate);
  });

  checks.emplace_back("no Bell-state kinks", [&](CriterionResult& r) {
    const TwoQubitState rho0 = singlet();
    const std::vector<double> Bs{0.0, 0.011, 0.0165, 1.0};
    r.pass = true;
    for (double B : Bs) {
      const DotParameters dot = DotParameters().with_field(B);
      const ChannelModel model(dot, 50.0);
      const auto tr = model.trajectory(short_grid(50.0));
      const auto ct = evolve(rho0, tr);
      phys.add(tr, "bell");
      phys.add(ct, "bell");
      const auto ev = find_g_crossings(ct, g_evaluator(rho0, model));
      double gmax = -kInf;
      for (double g : ct.g())
        if (!std::isnan(g)) gmax = std::max(gmax, g);
      r.pass = r.pass && ev.empty() && gmax <= 1.0 + 1e-6;
      r.detail += strf("%sB=%gT: crossings=%zu max g=%.9f", r.detail.empty() ? "" : "; ", B, ev.size(), gmax);
    }
  });

  checks.emplace_back("B=0 Werner law", [&](CriterionResult& r) {
    const auto x = run(singlet(), 0.0, short_grid(50.0), phys, "werner-law");
    double dev = 0.0, spread = 0.0;
    bool defined = true;
    for (const auto& rep : x.ct.reports) {
      if (!rep.g) defined = false;
      else dev = std::max(dev, std::abs(*rep.g - 1.0));
      const double hi = std::max({rep.st.Tm1, rep.st.T0, rep.st.Tp1});
      const double lo = std::min({rep.st.Tm1, rep.st.T0, rep.st.Tp1});
      spread = std::max(spread, hi - lo);
    }
    r.pass = defined && dev < 1e-3 && spread < 1e-3;
    r.detail = strf("max|g-1|=%.3e, max triplet spread=%.3e over 0-50 ns", dev, spread);
  });

  checks.emplace_back("positive-field regime g<1", [&](CriterionResult& r) {
    r.pass = true;
    for (double B : {0.0005, 0.0015, 0.005}) {
      const auto x = run(singlet(), B, short_grid(50.0), phys, "g<1");
      double gmax = -kInf;
      for (const auto& rep : x.ct.reports)
        if (rep.t > 0.1) gmax = std::max(gmax, rep.g ? *rep.g : kInf);
      r.pass = r.pass && gmax < 1.0;
      r.detail += strf("%sB=%gmT: max g(t>0.1)=%.9f", r.detail.empty() ? "" : "; ", 1e3 * B, gmax);
    }
  });

  checks.emplace_back("discord value anchors", [&](CriterionResult& r) {
    random_states::Rng rng(opts.seed);
    double ent_dev = 0.0;
    for (int k = 0; k < 100; ++k)
      ent_dev = std::max(ent_dev, std::abs(geometric_discord_lower(TwoQubitState(random_states::max_entangled_family(rng))) - 0.5));
    struct Fam {
      const char* name;
      Mat4 (*gen)(random_states::Rng&);
    };
    const Fam fams[] = {{"pure", random_states::pure},
                        {"X", random_states::x_state},
                        {"Bell-diagonal", random_states::bell_diagonal},
                        {"zero-Bloch", random_states::zero_local_bloch}};
    bool eq_ok = true;
    std::string eq;
    for (const auto& f : fams) {
      double worst = 0.0;
      for (int k = 0; k < 200; ++k) {
        const auto b = discord_bounds(TwoQubitState(f.gen(rng)));
        worst = std::max(worst, std::abs(b.ds_upper - b.ds_lower));
      }
      eq_ok = eq_ok && worst <= 1e-9;
      eq += strf(" %s=%.2e", f.name, worst);
    }
    double order = -kInf;
    for (int k = 0; k < 10000; ++k) {
      const auto b = discord_bounds(TwoQubitState(random_states::density(rng)));
      order = std::max(order, b.ds_lower - b.ds_upper);
    }
    r.pass = ent_dev <= 1e-10 && eq_ok && order <= 0.0;
    r.detail = strf("max|D_S-1/2| ent family=%.2e; max|upper-lower|:%s; max(lower-upper) random=%.2e",
                    ent_dev, eq.c_str(), order);
  });

  checks.emplace_back("oracle equivalence", [&](CriterionResult& r) {
    random_states::Rng rng(opts.seed + 7);
    std::vector<Mat4> states(100);
    for (auto& s : states) s = random_states::density(rng);
    std::vector<double> diff(states.size());
    parallel_for(states.size(), [&](std::size_t k) {
      const TwoQubitState s(states[k]);
      const BlochForm f = bloch_decompose(s);
      const Mat3 K = f.x * f.x.transpose() + f.T * f.T.transpose();
      const double kmax = Eigen::SelfAdjointEigenSolver<Mat3>(K).eigenvalues().maxCoeff();
      diff[k] = std::abs(oracle_one_sided_discord(s) - 0.25 * (K.trace() - kmax));
    });
    const double worst = *std::max_element(diff.begin(), diff.end());
    r.pass = worst < 1e-6;
    r.detail = strf("max |oracle - (Tr K_x - k_x)/4| = %.3e over 100 states", worst);
  });

  checks.emplace_back("Werner scheme invariance", [&](CriterionResult& r) {
    const auto grid = short_grid(50.0);
    std::vector<std::vector<double>> gs;
    for (double p : {0.1, 1.0 / 3.0, 1.0}) gs.push_back(run(make_state(spec::Werner{p}), 0.0015, grid, phys, "werner").ct.g());
    double dev = 0.0;
    bool defined = true;
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (int k = 1; k < 3; ++k) {
        if (std::isnan(gs[0][i]) || std::isnan(gs[k][i])) defined = false;
        else dev = std::max(dev, std::abs(gs[k][i] - gs[0][i]));
      }
    const double c0 = concurrence(make_state(spec::Werner{1.0 / 3.0}));
    r.pass = defined && dev <= 1e-10 && c0 <= 1e-12;
    r.detail = strf("max g deviation across p=0.1,1/3,1: %.3e; concurrence(p=1/3)=%.2e", dev, c0);
  });

  checks.emplace_back("M(B) monotone, Werner p=0.33", [&](CriterionResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    const TwoQubitState rho0 = make_state(spec::Werner{0.33});
    std::vector<double> Bs;
    for (int k = 0; k <= 20; ++k) Bs.push_back(0.005 * k);
    SweepOptions so;
    so.g_extrema = so.kinks = so.esd = false;
    const auto table = sweep(rho0, DotParameters(), Bs, so);
    parallel_for(Bs.size(), [&](std::size_t k) { run(rho0, Bs[k], short_grid(), phys, "M sweep"); });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool inc = true;
    double min_step = kInf;
    for (std::size_t k = 1; k < table.rows.size(); ++k) {
      const double d = table.rows[k].M->lower - table.rows[k - 1].M->lower;
      inc = inc && d > 0.0;
      min_step = std::min(min_step, d);
    }
    r.pass = inc && secs < 600.0;
    r.detail = strf("M(0)=%.5f M(100mT)=%.5f, smallest step %.3e, %.1f s", table.rows.front().M->lower,
                    table.rows.back().M->lower, min_step, secs);
  });

  checks.emplace_back("g-extrema calibration 0.25-5 mT", [&](CriterionResult& r) {
    std::vector<double> Bs;
    for (int k = 1; k <= 20; ++k) Bs.push_back(0.00025 * k);
    SweepOptions so;
    so.M = so.kinks = so.esd = false;
    const auto table = sweep(singlet(), DotParameters(), Bs, so);
    parallel_for(Bs.size(), [&](std::size_t k) { run(singlet(), Bs[k], short_grid(50.0), phys, "g-extrema"); });
    bool all = true, dec = true;
    double tmin_lo = kInf, tmin_hi = -kInf, tmax_lo = kInf, tmax_hi = -kInf;
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      const auto& g = table.rows[k].g;
      if (!g.min || !g.max) {
        all = false;
        continue;
      }
      tmin_lo = std::min(tmin_lo, g.min->t);
      tmin_hi = std::max(tmin_hi, g.min->t);
      tmax_lo = std::min(tmax_lo, g.max->t);
      tmax_hi = std::max(tmax_hi, g.max->t);
      if (k > 0 && table.rows[k - 1].g.max) dec = dec && g.max->value < table.rows[k - 1].g.max->value;
    }
    // spread relative to the smallest time in the range
    const double vmin = (tmin_hi - tmin_lo) / tmin_lo, vmax = (tmax_hi - tmax_lo) / tmax_lo;
    r.pass = all && dec && vmin < 0.1 && vmax < 0.1;
    r.detail = strf("extrema found at all B: %s; max value strictly decreasing: %s; t_min %.2f-%.2f ns "
                    "(%.1f%%), t_max %.2f-%.2f ns (%.1f%%)",
                    all ? "yes" : "no", dec ? "yes" : "no", tmin_lo, tmin_hi, 100 * vmin, tmax_lo, tmax_hi,
                    100 * vmax);
  });

  checks.emplace_back("low-field revival", [&](CriterionResult& r) {
    const auto grid = long_grid(12000.0);
    const std::vector<double> Bs{0.0, 0.003, 1.0};
    std::vector<std::optional<Revival>> rev(Bs.size());
    for (std::size_t k = 0; k < Bs.size(); ++k) {
      const auto x = run(singlet(), Bs[k], grid, phys, "revival");
      rev[k] = find_revival(grid, x.ct.rescaled_lower());
    }
    r.pass = rev[0] && rev[1] && !rev[2];
    for (std::size_t k = 0; k < Bs.size(); ++k) {
      r.detail += r.detail.empty() ? "" : "; ";
      if (rev[k])
        r.detail += strf("B=%gmT: dip %.3e at %.1f ns, max %.3e at %.1f ns (%s)", 1e3 * Bs[k], rev[k]->dip,
                         rev[k]->t_dip, rev[k]->peak, rev[k]->t_peak,
                         rev[k]->interior ? "interior" : "plateau at window end");
      else
        r.detail += strf("B=%gmT: no revival", 1e3 * Bs[k]);
    }
  });

  checks.emplace_back("ESD contrast 11 vs 16.5 mT", [&](CriterionResult& r) {
    std::optional<double> e[2];
    const double Bs[2] = {0.011, 0.0165};
    for (int k = 0; k < 2; ++k) e[k] = esd_time(run(singlet(), Bs[k], short_grid(), phys, "esd").ct);
    if (e[0] && e[1]) {
      const double rel = std::abs(*e[0] - *e[1]) / std::min(*e[0], *e[1]);
      r.pass = rel > 0.1;
      r.detail = strf("t_ESD(11mT)=%.3f ns, t_ESD(16.5mT)=%.3f ns, relative difference %.1f%% (needs >10%%)",
                      *e[0], *e[1], 100 * rel);
    } else {
      r.pass = false;
      r.detail = strf("ESD within 20 ns: 11mT %s, 16.5mT %s", e[0] ? "yes" : "no", e[1] ? "yes" : "no");
    }
  });

  checks.emplace_back("phase-family sensitivity", [&](CriterionResult& r) {
    auto normalized = [&](double gamma, double B) {
      auto d = run(make_state(spec::PhaseFamily{gamma}), B, short_grid(), phys, "phase").ct.rescaled_lower();
      const double s = 0.5 / d.front();
      for (double& x : d) x *= s;
      return d;
    };
    auto sup = [](const std::vector<double>& a, const std::vector<double>& b) {
      double m = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
      return m / 0.5;
    };
    const double d165 = sup(normalized(kPi, 0.0165), normalized(kPi / 2, 0.0165));
    const double d0 = sup(normalized(kPi, 0.0), normalized(kPi / 2, 0.0));
    auto onset = [&](double B, double gamma) {
      const auto x = run(make_state(spec::PhaseFamily{gamma}), B, short_grid(50.0), phys, "phase");
      for (const auto& rep : x.ct.reports)
        if (rep.bounds.rescaled_upper - rep.bounds.rescaled_lower > 1e-6) return rep.t;
      return kInf;
    };
    const double on0 = onset(0.0, 1.5 * kPi), on1 = onset(1.0, 1.5 * kPi);
    r.pass = d165 > 0.05 && d0 < 0.01 && std::isfinite(on1) && on1 < on0;
    // informational: the phase factor (-1+i)/sqrt2 = e^{i 3pi/4} quoted alongside the 3pi/2 label
    const double alt0 = onset(0.0, 0.75 * kPi), alt1 = onset(1.0, 0.75 * kPi);
    r.detail = strf("sup diff gamma=pi vs pi/2: %.2f%% at 16.5mT, %.3f%% at 0; gamma=3pi/2 bound "
                    "separation onset: B=0 %.3f ns, B=1T %.3f ns [phase e^{i3pi/4}: B=0 %.3f ns, B=1T %.3f ns]",
                    100 * d165, 100 * d0, on0, on1, alt0, alt1);
  });

  checks.emplace_back("physicality suite", [&](CriterionResult& r) {
    RadialOptions dbl;
    dbl.panel_s *= 0.5;
    dbl.panel_phase *= 0.5;
    dbl.sliver_order *= 2;
    struct Case {
      double B;
      bool long_run;
    };
    const Case cases[] = {{0.0, false}, {0.003, false}, {0.0165, false}, {0.1, false},
                          {1.0, false}, {5.0, false},   {0.003, true}};
    double dp = 0.0, dc = 0.0;
    for (const auto& c : cases) {
      const auto grid = c.long_run ? long_grid(12000.0) : short_grid(50.0);
      const DotParameters dot = DotParameters().with_field(c.B);
      const auto a = ChannelModel(dot, grid.back()).trajectory(grid);
      const auto b = ChannelModel(dot, grid.back(), dbl).trajectory(grid);
      phys.add(a, "doubling");
      phys.add(b, "doubling x2");
      for (std::size_t i = 0; i < grid.size(); ++i) {
        dp = std::max(dp, std::abs(a.p[i] - b.p[i]));
        dc = std::max(dc, std::abs(a.c[i] - b.c[i]));
      }
    }
    r.pass = phys.worst_cp >= -1e-12 && phys.min_eig >= -1e-8 && dp < 1e-6 && dc < 1e-6;
    r.detail = strf("worst CP margin %.3e (%s) over %zu channels; min eigenvalue %.3e (%s) over %zu states; "
                    "doubling max|dp|=%.2e max|dc|=%.2e",
                    phys.worst_cp, phys.worst_cp_where.c_str(), phys.channels, phys.min_eig,
                    phys.min_eig_where.c_str(), phys.states, dp, dc);
  });

  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = id;
    r.name = checks[k].first;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      checks[k].second(r);
    } catch (const Error& e) {
      r.pass = false;
      r.detail = strf("error (%s): %s", to_string(e.kind()), e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return strf("[%s] %2d %s: %s (%.1f s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
              r.seconds);
}

}  // namespace dqd

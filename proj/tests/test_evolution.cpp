#include <doctest.h>

#include <cmath>
#include <vector>

#include "dqd/acceptance.hpp"
#include "dqd/error.hpp"
#include "dqd/evolution.hpp"

using namespace dqd;

namespace {

// Kraus operators from the Choi matrix of the single-qubit map.
std::vector<Eigen::Matrix2cd> kraus(double p, cplx c) {
  auto phi = [&](int i, int j) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    if (i == j) {
      out(i, i) = 1.0 - p;
      out(1 - i, 1 - i) = p;
    } else {
      out(i, j) = (i == 0) ? c : std::conj(c);
    }
    return out;
  };
  Mat4 J = Mat4::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) J.block<2, 2>(2 * i, 2 * j) = phi(i, j);
  Eigen::SelfAdjointEigenSolver<Mat4> es(J);
  std::vector<Eigen::Matrix2cd> ks;
  for (int n = 0; n < 4; ++n) {
    const double lam = es.eigenvalues()(n);
    if (lam < 1e-14) continue;
    Eigen::Matrix2cd K;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) K(k, i) = std::sqrt(lam) * es.eigenvectors()(2 * i + k, n);
    ks.push_back(K);
  }
  return ks;
}

Mat4 kraus_apply(const Mat4& rho, double pA, cplx cA, double pB, cplx cB) {
  Mat4 out = Mat4::Zero();
  for (const auto& KA : kraus(pA, cA))
    for (const auto& KB : kraus(pB, cB)) {
      const Mat4 K = kron(KA, KB);
      out += K * rho * K.adjoint();
    }
  return out;
}

}  // namespace

TEST_CASE("two-qubit channel matches the Kraus construction") {
  random_states::Rng rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const TwoQubitState s(random_states::density(rng));
    const double pA = 0.5 * u(rng), pB = 0.5 * u(rng);
    const cplx cA = std::polar((1.0 - pA) * u(rng), 6.0 * u(rng));
    const cplx cB = std::polar((1.0 - pB) * u(rng), 6.0 * u(rng));
    const auto out = apply_channel(s, pA, cA, pB, cB);
    CHECK((out.rho() - kraus_apply(s.rho(), pA, cA, pB, cB)).norm() < 1e-13);
  }
}

TEST_CASE("identity channel and CP violation") {
  const auto s = make_state(spec::PhaseFamily{0.7});
  CHECK((apply_channel(s, 0.0, 1.0).rho() - s.rho()).norm() < 1e-15);
  try {
    apply_channel(s, 0.3, 0.9);
    FAIL("expected CpViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CpViolation);
  }
}

TEST_CASE("Bell-diagonal form is preserved for Psi-type inputs") {
  const auto s = make_state(spec::Bell{BellKind::PsiMinus});
  const auto out = apply_channel(s, 0.2, cplx(0.5, 0.3));
  const auto bp = bell_diagonal_params(out);
  REQUIRE(bp.has_value());
  CHECK(bp->a == doctest::Approx(0.5 - 0.2 * 0.8));  // 1/2 - p(1-p)
  CHECK(std::abs(bp->b + 0.5 * std::norm(cplx(0.5, 0.3))) < 1e-14);
}

TEST_CASE("grid sizes") {
  CHECK(short_grid().size() == 1001);
  const auto lg = long_grid();
  CHECK(lg.size() == 2501 + 5975);
  CHECK(lg.back() == doctest::Approx(12000.0));
  const auto g = uniform_grid(0.0, 1.0, 0.1);
  CHECK(g.size() == 11);
  CHECK(g[7] == 7 * 0.1);
}

namespace {

CorrelationTrajectory synthetic_g(const std::vector<double>& t, const std::function<double(double)>& g) {
  CorrelationTrajectory ct;
  for (double x : t) {
    CorrelationReport r;
    r.t = x;
    r.g = g(x);
    ct.reports.push_back(r);
  }
  return ct;
}

}  // namespace

TEST_CASE("g crossings on synthetic data") {
  const auto t = uniform_grid(0.0, 10.0, 0.1);
  auto g = [](double x) { return 1.0 + 0.5 * std::sin(x); };
  const auto ct = synthetic_g(t, g);
  auto ev = find_g_crossings(ct);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0].t_cross == doctest::Approx(M_PI).epsilon(1e-3));
  CHECK(ev[0].direction == CrossingDirection::AboveToBelow);
  CHECK(ev[1].direction == CrossingDirection::BelowToAbove);

  ev = find_g_crossings(ct, [&](double x) { return std::optional<double>(g(x)); });
  CHECK(ev[0].t_cross == doctest::Approx(M_PI).epsilon(1e-6));
  CHECK(ev[2].t_cross == doctest::Approx(3.0 * M_PI).epsilon(1e-6));

  // touching 1 from above is not a crossing
  const auto touch = synthetic_g(t, [](double x) { return 1.0 + (x - 5.0) * (x - 5.0); });
  CHECK(find_g_crossings(touch).empty());
}

TEST_CASE("extrema and revival on synthetic data") {
  const auto t = uniform_grid(0.0, 20.0, 0.01);
  std::vector<double> v;
  for (double x : t) v.push_back(std::cos(x));
  const auto ex = find_extrema(t, v);
  REQUIRE(ex.size() == 6);
  CHECK(ex[0].kind == ExtremumKind::Min);
  CHECK(ex[0].t == doctest::Approx(M_PI).epsilon(1e-6));
  CHECK(ex[1].kind == ExtremumKind::Max);

  // normalization does not move the extrema
  std::vector<double> w;
  for (double x : v) w.push_back(x / v.front() * 3.7);
  const auto ex2 = find_extrema(t, w);
  REQUIRE(ex2.size() == ex.size());
  for (std::size_t i = 0; i < ex.size(); ++i) CHECK(ex2[i].t == doctest::Approx(ex[i].t));

  std::vector<double> d;
  for (double x : t) d.push_back(std::exp(-x) + 0.2 * (1.0 - std::exp(-0.3 * x)) * (x < 12 ? 1.0 : std::exp(-(x - 12))));
  const auto rev = find_revival(t, d);
  REQUIRE(rev.has_value());
  CHECK(rev->interior);
  CHECK(rev->t_dip < rev->t_peak);
  CHECK(rev->peak > rev->dip);

  std::vector<double> mono;
  for (double x : t) mono.push_back(std::exp(-x));
  CHECK_FALSE(find_revival(t, mono).has_value());
}

TEST_CASE("singlet evolution: discord and g from the channel") {
  const auto rho0 = make_state(spec::Bell{BellKind::PsiMinus});
  const DotParameters dot = DotParameters().with_field(0.0165);
  const auto tr = compute_channel(dot, short_grid());
  const auto ct = evolve(rho0, tr);
  REQUIRE(ct.reports.size() == tr.times.size());
  const auto& r0 = ct.reports.front();
  CHECK(r0.bounds.rescaled_lower == doctest::Approx(rescaled_discord(0.5, 1.0)));
  for (std::size_t i = 0; i < ct.reports.size(); i += 37) {
    const auto& r = ct.reports[i];
    REQUIRE(r.bell.has_value());
    const auto closed = bell_diagonal_discord(r.bell->a, r.bell->b);
    CHECK(closed.ds == doctest::Approx(r.bounds.ds_lower).epsilon(1e-10).scale(1.0));
    CHECK(r.min_eigenvalue > -1e-8);
    CHECK(r.st.S0 + r.st.T0 + r.st.Tp1 + r.st.Tm1 == doctest::Approx(1.0));
  }
  // the rescaled kink sits where g crosses 1, independent of rescaling
  const auto kinks = find_g_crossings(ct);
  for (const auto& k : kinks) {
    const double t = k.t_cross;
    const auto ch = ChannelModel(dot, 20.0).evaluate(t);
    const auto s = apply_channel(rho0, ch.p, rotating_frame(ch.c, t, dot));
    const auto bp = bell_diagonal_params(s);
    REQUIRE(bp.has_value());
    CHECK(bell_diagonal_discord(bp->a, bp->b).g == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("field reversal leaves the singlet correlations unchanged") {
  const auto rho0 = make_state(spec::Bell{BellKind::PsiMinus});
  const auto a = evolve(rho0, compute_channel(DotParameters().with_field(0.011), short_grid()));
  const auto b = evolve(rho0, compute_channel(DotParameters().with_field(-0.011), short_grid()));
  for (std::size_t i = 0; i < a.reports.size(); i += 10) {
    CHECK(a.reports[i].bounds.rescaled_lower ==
          doctest::Approx(b.reports[i].bounds.rescaled_lower).epsilon(1e-12).scale(1.0));
    CHECK(a.reports[i].concurrence == doctest::Approx(b.reports[i].concurrence).epsilon(1e-12).scale(1.0));
  }
}

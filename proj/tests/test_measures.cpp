#include <doctest.h>

#include <cmath>

#include "dqd/acceptance.hpp"
#include "dqd/error.hpp"
#include "dqd/measures.hpp"

using namespace dqd;

TEST_CASE("rescaled discord at reference inputs") {
  const double k = 1.0 - std::sqrt(3.0) / 2.0;
  CHECK(rescaled_discord(0.5, 1.0) == doctest::Approx(0.5 * k * k).epsilon(1e-14));
  CHECK(rescaled_discord(0.5, 1.0) == doctest::Approx(0.0089745).epsilon(1e-5));
  CHECK(rescaled_discord(1.0 / 18.0, 1.0 / 3.0) == doctest::Approx(2.848e-3).epsilon(1e-3));
  CHECK(rescaled_discord(0.0, 0.25) == 0.0);
  CHECK(rescaled_discord(0.5, 0.25) == doctest::Approx(kRescaledMax));
  try {
    rescaled_discord(0.9, 0.25);
    FAIL("expected Numerical");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Numerical);
  }
}

TEST_CASE("Bell and Werner discord bounds") {
  const auto b = discord_bounds(make_state(spec::Bell{BellKind::PsiMinus}));
  CHECK(b.ds_lower == doctest::Approx(0.5));
  CHECK(b.ds_upper == doctest::Approx(0.5));
  CHECK(b.coincide);

  for (double p : {0.1, 1.0 / 3.0, 0.8}) {
    const auto w = discord_bounds(make_state(spec::Werner{p}));
    CHECK(w.ds_lower == doctest::Approx(p * p / 2.0).epsilon(1e-13));
    CHECK(w.coincide);
  }
}

TEST_CASE("Bell-diagonal closed form agrees with the general bounds") {
  random_states::Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double a = 0.5 * u(rng);
    const double b = a * (2.0 * u(rng) - 1.0);  // real, as on evolved trajectories
    const auto s = make_state(spec::BellDiagonalAB{a, b});
    const auto closed = bell_diagonal_discord(a, b);
    const auto gen = discord_bounds(s);
    CHECK(closed.ds == doctest::Approx(gen.ds_lower).epsilon(1e-12).scale(1.0));
    CHECK(gen.coincide);
    const auto g = g_ratio(s);
    REQUIRE(g.has_value());
    CHECK(*g == doctest::Approx(closed.g).epsilon(1e-10));
    CHECK((closed.regime == DiscordRegime::GBelow) == (closed.g < 1.0));
  }
  CHECK(std::isinf(bell_diagonal_discord(0.25, 0.1).g));
  CHECK(std::isnan(bell_diagonal_discord(0.25, 0.0).g));
  CHECK_THROWS_AS(bell_diagonal_discord(0.1, 0.2), Error);
}

TEST_CASE("bounds are ordered and in range on random states") {
  random_states::Rng rng(17);
  for (int k = 0; k < 1000; ++k) {
    const TwoQubitState s(random_states::density(rng));
    const auto d = discord_bounds(s);
    CHECK(d.ds_lower >= -1e-15);
    CHECK(d.ds_lower <= d.ds_upper + 1e-12);
    CHECK(d.ds_upper <= 0.5 + 1e-9);
    CHECK(d.rescaled_lower <= d.rescaled_upper + 1e-12);
    CHECK(d.rescaled_upper <= kRescaledMax + 1e-15);
  }
}

TEST_CASE("upper bound coincides with the lower one for pure states") {
  random_states::Rng rng(23);
  for (int k = 0; k < 200; ++k) {
    const TwoQubitState s(random_states::pure(rng));
    const auto d = discord_bounds(s);
    CHECK(d.ds_upper == doctest::Approx(d.ds_lower).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("g ratio edge cases") {
  CHECK(*g_ratio(make_state(spec::Bell{BellKind::PsiMinus})) == doctest::Approx(1.0));
  CHECK_FALSE(g_ratio(make_state(spec::Werner{0.0})).has_value());
  BlochForm f;
  f.T(0, 0) = 0.3;
  CHECK(std::isinf(*g_ratio(f)));
}

TEST_CASE("concurrence") {
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 1.0})
    CHECK(concurrence(make_state(spec::Werner{p})) ==
          doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 2.0)).epsilon(1e-10).scale(1.0));
  CHECK(concurrence(make_state(spec::EntFamily{0.1, 0.4, 0.7, 0.2})) == doctest::Approx(1.0).epsilon(1e-7));
  Mat4 prod = Mat4::Zero();
  prod(0, 0) = 1.0;
  CHECK(concurrence(TwoQubitState(prod)) == doctest::Approx(0.0).scale(1.0));
  // Bell-diagonal: 2 max(0, |b| - (1/2 - a)) ... = max(0, 2|b| + 2a - 1) for this pattern
  const double a = 0.4, b = 0.35;
  CHECK(concurrence(make_state(spec::BellDiagonalAB{a, b})) ==
        doctest::Approx(std::max(0.0, 2.0 * b - (1.0 - 2.0 * a))).epsilon(1e-10));
}

TEST_CASE("brute-force oracle matches the A-side formula") {
  CHECK(oracle_one_sided_discord(make_state(spec::Bell{BellKind::PsiMinus})) == doctest::Approx(0.5).epsilon(1e-8));
  random_states::Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    const TwoQubitState s(random_states::density(rng));
    const auto f = bloch_decompose(s);
    const Mat3 K = f.x * f.x.transpose() + f.T * f.T.transpose();
    Eigen::SelfAdjointEigenSolver<Mat3> es(K);
    const double expect = 0.25 * (K.trace() - es.eigenvalues()(2));
    CHECK(oracle_one_sided_discord(s) == doctest::Approx(expect).epsilon(1e-7).scale(1.0));
  }
}

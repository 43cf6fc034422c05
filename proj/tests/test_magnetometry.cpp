#include <doctest.h>

#include <cmath>

#include "dqd/error.hpp"
#include "dqd/magnetometry.hpp"

using namespace dqd;

TEST_CASE("Simpson integrates cubics exactly for even and odd interval counts") {
  for (int n : {10, 11, 2, 3}) {
    const auto t = uniform_grid(0.0, 2.0, 2.0 / n);
    std::vector<double> v;
    for (double x : t) v.push_back(x * x * x - 2.0 * x + 1.0);
    CHECK(simpson(t, v) == doctest::Approx(4.0 - 4.0 + 2.0).epsilon(1e-13));
  }
  std::vector<double> t{0.0, 1.0}, v{1.0, 3.0};
  CHECK(simpson(t, v) == doctest::Approx(2.0));
}

TEST_CASE("ESD detection requires a sustained zero run") {
  const auto t = uniform_grid(0.0, 1.0, 0.1);
  std::vector<double> c{0.5, 0.4, 0.0, 0.1, 0.3, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0};
  const auto e = esd_time(t, c);
  REQUIRE(e.has_value());
  CHECK(*e == doctest::Approx(0.6));
  c.back() = 0.01;
  CHECK_FALSE(esd_time(t, c).has_value());
}

TEST_CASE("calibration curves and inversion") {
  const auto up = make_curve(CalibrationQuantity::M, {0.0, 1.0, 2.0}, {1.0, 2.0, 4.0});
  CHECK(up.monotone);
  const auto est = invert_field(up, 3.0);
  CHECK(est.B == doctest::Approx(1.5));
  CHECK(est.B_lo == 1.0);
  CHECK(est.B_hi == 2.0);
  const auto down = make_curve(CalibrationQuantity::GMaxValue, {0.0, 1.0, 2.0}, {4.0, 2.0, 1.0});
  CHECK(invert_field(down, 3.0).B == doctest::Approx(0.5));

  const auto bumpy = make_curve(CalibrationQuantity::M, {0.0, 1.0, 2.0}, {1.0, 3.0, 2.0});
  CHECK_FALSE(bumpy.monotone);
  CHECK_THROWS_AS(invert_field(bumpy, 1.5), Error);
  CHECK_THROWS_AS(invert_field(up, 10.0), Error);
}

TEST_CASE("sweep input validation") {
  const auto rho0 = make_state(spec::Bell{BellKind::PsiMinus});
  const DotParameters dot;
  try {
    sweep(rho0, dot, {});
    FAIL("expected Usage");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
  }
  CHECK_THROWS_AS(sweep(rho0, dot, {0.1, 0.05}), Error);
}

TEST_CASE("M at high field matches the pure-dephasing closed form") {
  // p ~ 0 and |c| = exp(-(t/T2*)^2): ds = |c|^4 / 2, purity = (1 + |c|^4) / 2
  const auto rho0 = make_state(spec::Bell{BellKind::PsiMinus});
  const DotParameters dot;
  const double T2 = dot.t2star_theory();
  auto D = [&](double t) {
    const double c4 = std::exp(-4.0 * t * t / (T2 * T2));
    return rescaled_discord(0.5 * c4, 0.5 * (1.0 + c4));
  };
  const int n = 20000;
  double integral = 0.0;
  for (int k = 0; k <= n; ++k) integral += (k == 0 || k == n ? 0.5 : 1.0) * D(20.0 * k / n);
  integral *= 20.0 / n;
  const double expect = integral / D(0.0);
  CHECK(M_of_B(rho0, dot, 5.0).lower == doctest::Approx(expect).epsilon(2e-3));
  CHECK(M_of_B(rho0, dot, 0.1).lower > M_of_B(rho0, dot, 0.0).lower);
  CHECK_THROWS_AS(M_of_B(make_state(spec::Werner{0.0}), dot, 0.0), Error);
}

TEST_CASE("sweep rows are deterministic and ordered") {
  const auto rho0 = make_state(spec::Bell{BellKind::PsiMinus});
  SweepOptions o;
  o.esd = false;
  const std::vector<double> Bs{0.0, 0.011, 0.0165};
  const auto a = sweep(rho0, DotParameters(), Bs, o);
  const auto b = sweep(rho0, DotParameters(), Bs, o);
  REQUIRE(a.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.rows[i].B == Bs[i]);
    REQUIRE(a.rows[i].M.has_value());
    CHECK(a.rows[i].M->lower == b.rows[i].M->lower);
    CHECK(a.rows[i].kink_times == b.rows[i].kink_times);
  }
  const auto curve = curve_from_sweep(a, CalibrationQuantity::M);
  CHECK(curve.B.size() == 3);
  CHECK(curve.monotone);
}

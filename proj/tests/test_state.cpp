#include <doctest.h>

#include <cmath>
#include <random>

#include "dqd/acceptance.hpp"
#include "dqd/constants.hpp"
#include "dqd/error.hpp"
#include "dqd/state.hpp"

using namespace dqd;

namespace {

bool throws_kind(ErrorKind k, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

}  // namespace

TEST_CASE("state validation rejects non-Hermitian, bad trace and negative states") {
  Mat4 rho = Mat4::Identity() / 4.0;
  CHECK_NOTHROW(TwoQubitState{rho});

  Mat4 bad = rho;
  bad(0, 1) = 0.1;
  CHECK(throws_kind(ErrorKind::InvalidParameter, [&] { TwoQubitState s(bad); }));

  bad = rho * 1.1;
  CHECK(throws_kind(ErrorKind::InvalidParameter, [&] { TwoQubitState s(bad); }));

  bad = Mat4::Zero();
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  CHECK(throws_kind(ErrorKind::InvalidParameter, [&] { TwoQubitState s(bad); }));

  CHECK(throws_kind(ErrorKind::InvalidParameter, [] { make_state(spec::Werner{1.5}); }));
  CHECK(throws_kind(ErrorKind::InvalidParameter, [] { make_state(spec::BellDiagonalAB{0.2, 0.3}); }));
  CHECK(throws_kind(ErrorKind::InvalidParameter, [] { make_state(spec::EntFamily{0.3, 0.3}); }));
}

TEST_CASE("dot parameter derived quantities") {
  DotParameters d;
  CHECK(d.alpha() == doctest::Approx(83.0 / 1.5e6));
  CHECK(d.sigma2() == doctest::Approx(1.5e6 * 1.25));
  CHECK(d.t2star_theory() == doctest::Approx(12.2855).epsilon(1e-4));
  CHECK(d.validity_window() == doctest::Approx(0.6582119569 * 1.5e6 / 83.0));
  CHECK(d.with_field(-0.5).zeeman() == doctest::Approx(-0.44 * 57.883818 * 0.5));
  CHECK(throws_kind(ErrorKind::InvalidParameter, [] { DotParameters(-1.0, 1e6, 1.5, 0.0); }));
  CHECK(throws_kind(ErrorKind::InvalidParameter, [] { DotParameters(83.0, 1e6, 1.3, 0.0); }));
}

TEST_CASE("Bloch decomposition round-trips random states") {
  random_states::Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const Mat4 rho = random_states::density(rng);
    const auto f = bloch_decompose(rho);
    CHECK((reconstruct(f) - rho).norm() < 1e-13);
    CHECK(f.x.norm() <= 1.0 + 1e-12);
  }
  const auto f = bloch_decompose(make_state(spec::Bell{BellKind::PsiMinus}));
  CHECK((f.T + Mat3::Identity()).norm() < 1e-14);
  CHECK(f.x.norm() < 1e-15);
}

TEST_CASE("Bell states and singlet-triplet weights") {
  const auto psi_m = make_state(spec::Bell{BellKind::PsiMinus});
  auto w = singlet_triplet_weights(psi_m);
  CHECK(w.S0 == doctest::Approx(1.0));
  CHECK(w.T0 == doctest::Approx(0.0).scale(1.0));
  CHECK(purity(psi_m) == doctest::Approx(1.0));

  w = singlet_triplet_weights(make_state(spec::Bell{BellKind::PsiPlus}));
  CHECK(w.T0 == doctest::Approx(1.0));

  w = singlet_triplet_weights(make_state(spec::Werner{0.0}));
  CHECK(w.S0 == doctest::Approx(0.25));
  CHECK(w.Tp1 + w.Tm1 + w.T0 + w.S0 == doctest::Approx(1.0));
}

TEST_CASE("Bell-diagonal parameters are recognised in both arrangements") {
  for (auto ord : {BasisOrdering::Psi, BasisOrdering::Phi}) {
    const auto s = make_state(spec::BellDiagonalAB{0.4, cplx(0.3, 0.1), ord});
    const auto bp = bell_diagonal_params(s);
    REQUIRE(bp.has_value());
    CHECK(bp->a == doctest::Approx(0.4));
    CHECK(std::abs(bp->b - cplx(0.3, 0.1)) < 1e-15);
  }
  const auto bp = bell_diagonal_params(make_state(spec::Bell{BellKind::PsiMinus}));
  REQUIRE(bp.has_value());
  CHECK(bp->a == doctest::Approx(0.5));
  CHECK(bp->b.real() == doctest::Approx(-0.5));

  const auto phi = bell_diagonal_params(make_state(spec::Bell{BellKind::PhiPlus}));
  REQUIRE(phi.has_value());
  CHECK(phi->b.real() == doctest::Approx(0.5));

  CHECK_FALSE(bell_diagonal_params(make_state(spec::PhaseFamily{1.0})).has_value());
}

TEST_CASE("state families are pure and normalised") {
  for (double g : {0.0, 1.0, M_PI}) CHECK(purity(make_state(spec::PhaseFamily{g})) == doctest::Approx(1.0));
  const auto s = make_state(spec::EntFamily{0.1, 0.4, 0.3, -0.7});
  CHECK(purity(s) == doctest::Approx(1.0));
  CHECK(s.rho().trace().real() == doctest::Approx(1.0));
  CHECK(describe(spec::Werner{0.25}) == "werner:p=0.25");
  CHECK(describe(spec::Bell{BellKind::PhiMinus}) == "bell:phi-");
}

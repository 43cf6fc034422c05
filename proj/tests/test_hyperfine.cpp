#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <string>

#include "dqd/error.hpp"
#include "dqd/evolution.hpp"
#include "dqd/hyperfine.hpp"

using namespace dqd;

namespace {

constexpr double kHbar = 0.6582119569;

Eigen::Matrix2cd block_propagator(double delta, double V, double t) {
  Eigen::Matrix2d H;
  H << delta, V, V, -delta;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
  Eigen::Matrix2cd phase = Eigen::Matrix2cd::Zero();
  for (int k = 0; k < 2; ++k) phase(k, k) = std::exp(cplx(0.0, -es.eigenvalues()(k) * t / kHbar));
  return es.eigenvectors().cast<cplx>() * phase * es.eigenvectors().transpose().cast<cplx>();
}

struct EnvThreads {
  std::string saved;
  bool had;
  explicit EnvThreads(const char* v) {
    const char* old = std::getenv("DQD_THREADS");
    had = old != nullptr;
    if (had) saved = old;
    setenv("DQD_THREADS", v, 1);
  }
  ~EnvThreads() {
    if (had) setenv("DQD_THREADS", saved.c_str(), 1);
    else unsetenv("DQD_THREADS");
  }
};

}  // namespace

TEST_CASE("block amplitudes match the 2x2 matrix exponential") {
  for (double delta : {-3.0, -0.2, 0.0, 0.7}) {
    for (double V : {0.0, 0.05, 1.3}) {
      for (double t : {0.0, 0.4, 7.9}) {
        const auto b = block_amplitudes(delta, V, t);
        const auto U = block_propagator(delta, V, t);
        CHECK(std::abs(b.A_amp - U(0, 0)) < 1e-13);
        CHECK(std::abs(b.D_amp - U(1, 1)) < 1e-13);
        CHECK(b.f_prob == doctest::Approx(std::norm(U(1, 0))).epsilon(1e-12).scale(1.0));
        // unitarity of the block
        CHECK(std::norm(b.A_amp) + b.f_prob == doctest::Approx(1.0).epsilon(1e-13));
      }
    }
  }
  CHECK_THROWS_AS(block_amplitudes(1.0, 1.0, -1.0), Error);
}

TEST_CASE("mode evaluation matches its defining sum") {
  std::vector<ChannelMode> modes{{0.3, 1.1, 0.4, 0.1, 0.2, -0.05, 0.3, 0.2},
                                 {2.0, 0.7, 0.5, -0.2, 0.1, 0.3, 0.1, 0.4}};
  std::vector<double> times = uniform_grid(0.0, 5.0, 0.01);
  times.push_back(5.123);  // breaks uniformity
  std::vector<double> p;
  std::vector<cplx> c;
  evaluate_modes(modes, times, p, c);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    double pe = 0.0;
    cplx ce = 0.0;
    for (const auto& m : modes) {
      const double C1 = std::cos(m.w1 * t), S1 = std::sin(m.w1 * t);
      const double C2 = std::cos(m.w2 * t), S2 = std::sin(m.w2 * t);
      ce += m.K0 * C1 * C2 - m.K12 * S1 * S2 - cplx(0.0, 1.0) * (m.K1 * S1 * C2 + m.K2 * C1 * S2);
      pe += 0.5 * (m.Kf1 * S1 * S1 + m.Kf2 * S2 * S2);
    }
    CHECK(p[i] == doctest::Approx(pe).epsilon(1e-12).scale(1.0));
    CHECK(std::abs(c[i] - ce) < 1e-12);
    const auto pt = evaluate_modes(modes, t);
    CHECK(std::abs(pt.c - ce) < 1e-12);
  }
}

TEST_CASE("radial and Cartesian rules agree on the short grid") {
  const auto times = short_grid();
  for (double B : {0.0, 0.003, 0.1}) {
    const DotParameters dot = DotParameters().with_field(B);
    const auto rad = compute_channel(dot, times);
    const auto car = compute_channel(dot, times, build_quadrature(dot, times.back()));
    double err = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
      err = std::max({err, std::abs(rad.p[i] - car.p[i]), std::abs(rad.c[i] - car.c[i])});
    CAPTURE(B);
    CHECK(err < 1e-8);
  }
}

TEST_CASE("channel at zero field is depolarizing and real") {
  const auto tr = compute_channel(DotParameters(), uniform_grid(0.0, 50.0, 0.05));
  CHECK(tr.p.front() == 0.0);
  CHECK(std::abs(tr.c.front() - 1.0) < 1e-14);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    CHECK(tr.c[i].real() == doctest::Approx(1.0 - 2.0 * tr.p[i]).epsilon(1e-12).scale(1.0));
    CHECK(std::abs(tr.c[i].imag()) < 1e-12);
  }
  // the flip probability saturates near 1/3 in the box model
  CHECK(tr.p.back() == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("reversing the field conjugates c and leaves p unchanged") {
  const auto times = short_grid();
  const auto a = compute_channel(DotParameters().with_field(0.011), times);
  const auto b = compute_channel(DotParameters().with_field(-0.011), times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(a.p[i] == doctest::Approx(b.p[i]).epsilon(1e-13).scale(1.0));
    CHECK(std::abs(a.c[i] - std::conj(b.c[i])) < 1e-13);
  }
}

TEST_CASE("high field gives Gaussian dephasing with p ~ 0") {
  const DotParameters dot = DotParameters().with_field(5.0);
  const auto tr = compute_channel(dot, short_grid());
  const double T2 = dot.t2star_theory();
  for (std::size_t i = 0; i < tr.times.size(); i += 50) {
    const double t = tr.times[i];
    CHECK(tr.p[i] < 1e-6);
    CHECK(std::abs(rotating_frame(tr.c[i], t, dot)) ==
          doctest::Approx(std::exp(-t * t / (T2 * T2))).epsilon(1e-3).scale(1.0));
  }
}

TEST_CASE("validity window and small baths raise Validity") {
  const DotParameters dot;
  CHECK_NOTHROW(check_validity(dot, 12000.0));
  try {
    check_validity(dot, 20000.0);
    FAIL("expected Validity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validity);
  }
  try {
    ChannelModel m(DotParameters(83.0, 50.0, 1.5, 0.0), 1.0);
    FAIL("expected Validity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validity);
  }
}

TEST_CASE("quadrature node-count rule") {
  const DotParameters dot;
  CHECK(required_m_nodes(dot, 20.0) == 257);
  CHECK(required_m_nodes(dot, 12000.0) > 257);
  const auto q = build_quadrature(dot, 20.0, 10, 10);
  CHECK(q.m_nodes.size() == 257);
  CHECK(q.q_nodes.size() == static_cast<std::size_t>(kMinQNodes));
}

TEST_CASE("CP verification") {
  ChannelTrajectory tr;
  tr.times = {0.0, 1.0};
  tr.p = {0.0, 0.0};
  tr.c = {1.0, 1.0};
  auto r = verify_channel_cp(tr);
  CHECK(r.pass);
  CHECK(r.worst_margin == doctest::Approx(0.0).scale(1.0));

  tr.p = {0.0, 0.3};
  tr.c = {1.0, 0.8};
  r = verify_channel_cp(tr);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_index == 1);
  CHECK(r.worst_margin == doctest::Approx(-0.1));

  tr.p = {0.0, 1.2};
  tr.c = {1.0, 0.0};
  CHECK_FALSE(verify_channel_cp(tr).pass);

  const auto real = compute_channel(DotParameters().with_field(0.0165), uniform_grid(0.0, 50.0, 0.02));
  CHECK(verify_channel_cp(real).pass);
}

TEST_CASE("results do not depend on the worker count") {
  const DotParameters dot = DotParameters().with_field(0.003);
  const auto times = uniform_grid(0.0, 30.0, 0.1);
  ChannelTrajectory one, many;
  {
    EnvThreads env("1");
    one = compute_channel(dot, times);
  }
  {
    EnvThreads env("7");
    many = compute_channel(dot, times);
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(one.p[i] == many.p[i]);
    CHECK(one.c[i] == many.c[i]);
  }
}

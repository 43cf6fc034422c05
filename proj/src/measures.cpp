#include "dqd/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dqd/error.hpp"
#include "dqd/sym3.hpp"

namespace dqd {

namespace {

using Arr3 = std::array<std::array<double, 3>, 3>;

Arr3 to_arr(const Mat3& m) {
  Arr3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
  return a;
}

struct TopEigen {
  double trace_minus_top = 0.0;
  std::vector<Vec3> top;  // top eigenvector, or the whole cluster when degenerate
};

constexpr double kGapTol = 1e-10;

TopEigen top_eigen(const Mat3& K) {
  const Sym3Eigen e = sym3_eigen(to_arr(K));
  TopEigen out;
  out.trace_minus_top = e.values[1] + e.values[2];
  for (int k = 0; k < 3; ++k) {
    if (k > 0 && e.values[0] - e.values[k] >= kGapTol) break;
    out.top.emplace_back(e.vectors[k][0], e.vectors[k][1], e.vectors[k][2]);
  }
  return out;
}

// Tr L - l for L = v v^T + w w^T
double trace_minus_top(const Vec3& v, const Vec3& w) {
  const Mat3 L = v * v.transpose() + w * w.transpose();
  const Sym3Eigen e = sym3_eigen(to_arr(L));
  return std::max(0.0, e.values[1] + e.values[2]);
}

}  // namespace

double geometric_discord_lower(const BlochForm& f) {
  const Mat3 Kx = f.x * f.x.transpose() + f.T * f.T.transpose();
  const Mat3 Ky = f.y * f.y.transpose() + f.T.transpose() * f.T;
  const Sym3Eigen ex = sym3_eigen(to_arr(Kx));
  const Sym3Eigen ey = sym3_eigen(to_arr(Ky));
  const double dx = ex.values[1] + ex.values[2];
  const double dy = ey.values[1] + ey.values[2];
  return std::max(0.0, 0.25 * std::max(dx, dy));
}

double geometric_discord_lower(const TwoQubitState& s) {
  return geometric_discord_lower(bloch_decompose(s));
}

UpperBound geometric_discord_upper(const BlochForm& f, UpperPairing pairing) {
  const Mat3 Kx = f.x * f.x.transpose() + f.T * f.T.transpose();
  const Mat3 Ky = f.y * f.y.transpose() + f.T.transpose() * f.T;
  const TopEigen ex = top_eigen(Kx);
  const TopEigen ey = top_eigen(Ky);

  // L_x = |x><x| + T|k_y><k_y|T^T,  L_y = |y><y| + T^T|k_x><k_x|T
  double lx = std::numeric_limits<double>::infinity();
  for (const Vec3& ky : ey.top) lx = std::min(lx, trace_minus_top(f.x, f.T * ky));
  double ly = std::numeric_limits<double>::infinity();
  for (const Vec3& kx : ex.top) ly = std::min(ly, trace_minus_top(f.y, f.T.transpose() * kx));

  UpperBound ub;
  ub.degenerate = ex.top.size() > 1 || ey.top.size() > 1;
  const double a = pairing == UpperPairing::AsPrinted ? ex.trace_minus_top + ly : ex.trace_minus_top + lx;
  const double b = pairing == UpperPairing::AsPrinted ? ey.trace_minus_top + lx : ey.trace_minus_top + ly;
  ub.value = std::max(0.0, 0.25 * std::min(a, b));
  return ub;
}

double geometric_discord_upper(const TwoQubitState& s, UpperPairing pairing) {
  return geometric_discord_upper(bloch_decompose(s), pairing).value;
}

double rescaled_discord(double ds, double purity) {
  if (!(purity > 0.0)) throw Error(ErrorKind::Numerical, "rescaled_discord: purity must be positive");
  double rad = 1.0 - ds / (2.0 * purity);
  if (rad < -1e-9) throw Error(ErrorKind::Numerical, "rescaled_discord: negative radicand");
  rad = std::max(0.0, rad);
  return 0.5 * (1.0 - std::sqrt(3.0) / 2.0) * (1.0 - std::sqrt(rad));
}

DiscordBounds discord_bounds(const TwoQubitState& s, UpperPairing pairing) {
  const BlochForm f = bloch_decompose(s);
  const double P = purity(s);
  DiscordBounds d;
  d.ds_lower = geometric_discord_lower(f);
  const UpperBound ub = geometric_discord_upper(f, pairing);
  d.ds_upper = ub.value;
  d.degenerate = ub.degenerate;
  d.rescaled_lower = rescaled_discord(d.ds_lower, P);
  d.rescaled_upper = rescaled_discord(d.ds_upper, P);
  d.coincide = std::abs(d.ds_upper - d.ds_lower) < 1e-9;
  return d;
}

const char* to_string(DiscordRegime r) noexcept {
  switch (r) {
    case DiscordRegime::GBelow: return "g<=1";
    case DiscordRegime::GAbove: return "g>=1";
    case DiscordRegime::Boundary: return "g=1";
  }
  return "g=1";
}

BellDiagonalDiscord bell_diagonal_discord(double a, cplx b) {
  const double ab = std::abs(b);
  if (!(a >= 0.0 && a <= 0.5) || !(ab <= a + 1e-12))
    throw Error(ErrorKind::InvalidParameter, "bell_diagonal_discord: need 0<=a<=1/2 and |b|<=a");
  BellDiagonalDiscord r;
  const double den = std::abs(1.0 - 4.0 * a);
  if (den == 0.0) {
    r.g = ab > 0.0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
  } else {
    r.g = 2.0 * ab / den;
  }
  if (std::isnan(r.g)) {
    r.regime = DiscordRegime::Boundary;
    r.ds = 0.0;
  } else if (std::abs(r.g - 1.0) <= 1e-12) {
    r.regime = DiscordRegime::Boundary;
    r.ds = 2.0 * ab * ab;
  } else if (r.g < 1.0) {
    r.regime = DiscordRegime::GBelow;
    r.ds = 2.0 * ab * ab;
  } else {
    r.regime = DiscordRegime::GAbove;
    r.ds = (0.5 - 2.0 * a) * (0.5 - 2.0 * a) + ab * ab;
  }
  return r;
}

std::optional<double> g_ratio(const BlochForm& f) {
  const double num = std::abs(f.T(0, 0));
  const double den = std::abs(f.T(2, 2));
  if (den < 1e-14) {
    if (num < 1e-14) return std::nullopt;
    return std::numeric_limits<double>::infinity();
  }
  return num / den;
}

std::optional<double> g_ratio(const TwoQubitState& s) {
  const Mat4& r = s.rho();
  // Tr(sx sx rho) = 2 Re(r03 + r12), Tr(sz sz rho) = r00 - r11 - r22 + r33
  BlochForm f;
  f.T(0, 0) = 2.0 * (r(0, 3) + r(1, 2)).real();
  f.T(2, 2) = (r(0, 0) - r(1, 1) - r(2, 2) + r(3, 3)).real();
  return g_ratio(f);
}

double concurrence(const TwoQubitState& s) {
  const Mat4& rho = s.rho();
  const Mat4 yy = kron(pauli(2), pauli(2));
  const Mat4 tilde = yy * rho.conjugate() * yy;
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (rho + rho.adjoint()));
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat4 sq = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  Mat4 M = sq * tilde * sq;
  M = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> em(M, Eigen::EigenvaluesOnly);
  std::array<double, 4> l;
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, em.eigenvalues()(i)));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

namespace {

double pinching_distance(const Mat4& rho, double theta, double phi) {
  const cplx e = std::polar(1.0, phi);
  Eigen::Vector2cd n(std::cos(0.5 * theta), e * std::sin(0.5 * theta));
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd P0 = n * n.adjoint();
  const Eigen::Matrix2cd P1 = id - P0;
  const Mat4 A0 = kron(P0, id), A1 = kron(P1, id);
  const Mat4 pinched = A0 * rho * A0 + A1 * rho * A1;
  return (rho - pinched).squaredNorm();
}

}  // namespace

double oracle_one_sided_discord(const TwoQubitState& s, int grid_resolution) {
  const int nt = std::max(4, grid_resolution);
  const int np = 2 * nt;
  const double pi = std::acos(-1.0);
  const Mat4& rho = s.rho();

  // several seeds guard against a coarse grid landing in the wrong basin
  struct Seed {
    double val, th, ph;
  };
  std::vector<Seed> seeds;
  for (int i = 0; i <= nt; ++i) {
    const double th = pi * i / nt;
    for (int j = 0; j < np; ++j) {
      const double ph = 2.0 * pi * j / np;
      seeds.push_back({pinching_distance(rho, th, ph), th, ph});
    }
  }
  std::partial_sort(seeds.begin(), seeds.begin() + 4, seeds.end(),
                    [](const Seed& a, const Seed& b) { return a.val < b.val; });

  double best = seeds[0].val;
  for (int k = 0; k < 4; ++k) {
    double th = seeds[k].th, ph = seeds[k].ph, val = seeds[k].val;
    double step = pi / nt;
    while (step > 1e-10) {
      bool moved = false;
      for (const auto& d : {std::pair{1.0, 0.0}, std::pair{-1.0, 0.0}, std::pair{0.0, 1.0},
                            std::pair{0.0, -1.0}, std::pair{1.0, 1.0}, std::pair{-1.0, -1.0},
                            std::pair{1.0, -1.0}, std::pair{-1.0, 1.0}}) {
        const double t2 = th + d.first * step, p2 = ph + d.second * step;
        const double v = pinching_distance(rho, t2, p2);
        if (v < val) {
          val = v;
          th = t2;
          ph = p2;
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    best = std::min(best, val);
  }
  return best;
}

}  // namespace dqd

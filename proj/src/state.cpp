#include "dqd/state.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "dqd/error.hpp"

namespace dqd {

const char* to_string(BasisOrdering o) noexcept {
  switch (o) {
    case BasisOrdering::Computational: return "computational";
    case BasisOrdering::Psi: return "psi";
    case BasisOrdering::Phi: return "phi";
  }
  return "computational";
}

std::array<int, 4> arrangement(BasisOrdering o) noexcept {
  if (o == BasisOrdering::Phi) return {1, 0, 3, 2};
  return {0, 1, 2, 3};
}

TwoQubitState::TwoQubitState(const Mat4& rho, BasisOrdering ordering, const StateTolerances& tol)
    : rho_(rho), ordering_(ordering), min_eig_(0.0) {
  if (!rho.allFinite()) throw Error(ErrorKind::InvalidParameter, "density matrix has non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermitian) {
    throw Error(ErrorKind::InvalidParameter, "density matrix is not Hermitian (deviation " +
                                                 std::to_string(herm) + ")");
  }
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace is " << tr.real() << "+" << tr.imag() << "i, expected 1";
    throw Error(ErrorKind::InvalidParameter, os.str());
  }
  const Mat4 h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> es(h, Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues()(0);
  if (min_eig_ < tol.min_eigenvalue) {
    throw Error(ErrorKind::InvalidParameter,
                "density matrix is not positive (min eigenvalue " + std::to_string(min_eig_) + ")");
  }
}

Mat4 TwoQubitState::arranged() const {
  const auto p = arrangement(ordering_);
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = rho_(p[i], p[j]);
  return out;
}

Eigen::Matrix2cd pauli(int i) {
  Eigen::Matrix2cd m;
  const cplx I(0.0, 1.0);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw Error(ErrorKind::InvalidParameter, "pauli index out of range");
  }
  return m;
}

Mat4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

namespace {

Mat4 projector(const Eigen::Vector4cd& v) { return v * v.adjoint(); }

Eigen::Vector4cd bell_vector(BellKind k) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (k) {
    case BellKind::PhiPlus: v(0) = r; v(3) = r; break;
    case BellKind::PhiMinus: v(0) = r; v(3) = -r; break;
    case BellKind::PsiPlus: v(1) = r; v(2) = r; break;
    case BellKind::PsiMinus: v(1) = r; v(2) = -r; break;
  }
  return v;
}

const char* bell_name(BellKind k) {
  switch (k) {
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
  }
  return "psi-";
}

struct Builder {
  TwoQubitState operator()(const spec::Bell& s) const {
    const bool phi = s.which == BellKind::PhiPlus || s.which == BellKind::PhiMinus;
    return TwoQubitState(projector(bell_vector(s.which)),
                         phi ? BasisOrdering::Phi : BasisOrdering::Psi);
  }
  TwoQubitState operator()(const spec::Werner& s) const {
    if (!(s.p >= 0.0 && s.p <= 1.0))
      throw Error(ErrorKind::InvalidParameter, "Werner p must lie in [0,1]");
    const Mat4 rho = (1.0 - s.p) * Mat4::Identity() / 4.0 +
                     s.p * projector(bell_vector(BellKind::PsiMinus));
    return TwoQubitState(rho, BasisOrdering::Psi);
  }
  TwoQubitState operator()(const spec::EntFamily& s) const {
    if (!(s.a >= 0.0) || !(s.b >= 0.0) || std::abs(s.a + s.b - 0.5) > 1e-12)
      throw Error(ErrorKind::InvalidParameter, "entangled family needs a,b >= 0 and a+b = 1/2");
    const cplx I(0.0, 1.0);
    Eigen::Vector4cd v;
    v(0) = std::sqrt(s.a);
    v(2) = std::sqrt(s.b) * std::exp(I * s.alpha);
    v(1) = std::sqrt(s.b) * std::exp(I * s.beta);
    v(3) = -std::sqrt(s.a) * std::exp(I * (s.alpha + s.beta));
    return TwoQubitState(projector(v));
  }
  TwoQubitState operator()(const spec::PhaseFamily& s) const {
    Eigen::Vector4cd v;
    v << 0.5, 0.5, 0.5, 0.5 * std::exp(cplx(0.0, s.gamma));
    return TwoQubitState(projector(v));
  }
  TwoQubitState operator()(const spec::BellDiagonalAB& s) const {
    // positivity: 0 <= a <= 1/2 and |b| <= a
    if (!(s.a >= 0.0 && s.a <= 0.5) || !(std::abs(s.b) <= s.a + 1e-15))
      throw Error(ErrorKind::InvalidParameter, "Bell-diagonal parameters need 0<=a<=1/2 and |b|<=a, got a=" +
                                                   std::to_string(s.a) + " |b|=" +
                                                   std::to_string(std::abs(s.b)));
    Mat4 arr = Mat4::Zero();
    arr(0, 0) = arr(3, 3) = 0.5 - s.a;
    arr(1, 1) = arr(2, 2) = s.a;
    arr(1, 2) = s.b;
    arr(2, 1) = std::conj(s.b);
    const auto p = arrangement(s.ordering);
    Mat4 rho;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rho(p[i], p[j]) = arr(i, j);
    return TwoQubitState(rho, s.ordering);
  }
  TwoQubitState operator()(const spec::Raw& s) const { return TwoQubitState(s.rho, s.ordering); }
};

}  // namespace

TwoQubitState make_state(const StateSpec& s) { return std::visit(Builder{}, s); }

namespace {
// shortest text that parses back to the same double
std::string num(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}
}  // namespace

std::string describe(const StateSpec& s) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, spec::Bell>) {
          os << "bell:" << bell_name(v.which);
        } else if constexpr (std::is_same_v<T, spec::Werner>) {
          os << "werner:p=" << num(v.p);
        } else if constexpr (std::is_same_v<T, spec::EntFamily>) {
          os << "ent:a=" << num(v.a) << ",alpha=" << num(v.alpha) << ",beta=" << num(v.beta);
        } else if constexpr (std::is_same_v<T, spec::PhaseFamily>) {
          os << "phase:gamma=" << num(v.gamma);
        } else if constexpr (std::is_same_v<T, spec::BellDiagonalAB>) {
          os << "belldiag:a=" << num(v.a) << ",b=" << num(v.b.real());
          if (v.b.imag() != 0.0) os << ",bi=" << num(v.b.imag());
          if (v.ordering == BasisOrdering::Phi) os << ",order=phi";
        } else {
          os << "raw";
        }
      },
      s);
  return os.str();
}

BlochForm bloch_decompose(const Mat4& rho) {
  BlochForm f;
  const Eigen::Matrix2cd id = pauli(0);
  for (int i = 0; i < 3; ++i) {
    f.x(i) = (rho * kron(pauli(i + 1), id)).trace().real();
    f.y(i) = (rho * kron(id, pauli(i + 1))).trace().real();
    for (int j = 0; j < 3; ++j) f.T(i, j) = (rho * kron(pauli(i + 1), pauli(j + 1))).trace().real();
  }
  return f;
}

BlochForm bloch_decompose(const TwoQubitState& s) { return bloch_decompose(s.rho()); }

Mat4 reconstruct(const BlochForm& f) {
  const Eigen::Matrix2cd id = pauli(0);
  Mat4 rho = kron(id, id);
  for (int i = 0; i < 3; ++i) {
    rho += f.x(i) * kron(pauli(i + 1), id) + f.y(i) * kron(id, pauli(i + 1));
    for (int j = 0; j < 3; ++j) rho += f.T(i, j) * kron(pauli(i + 1), pauli(j + 1));
  }
  return rho / 4.0;
}

double purity(const TwoQubitState& s) { return (s.rho() * s.rho()).trace().real(); }

SingletTripletWeights singlet_triplet_weights(const TwoQubitState& s) {
  const Mat4& r = s.rho();
  SingletTripletWeights w;
  w.Tp1 = r(0, 0).real();
  w.Tm1 = r(3, 3).real();
  // (|ud> +- |du>)/sqrt2
  const double mid = 0.5 * (r(1, 1).real() + r(2, 2).real());
  const double coh = r(1, 2).real();
  w.T0 = mid + coh;
  w.S0 = mid - coh;
  return w;
}

std::optional<BellDiagParams> bell_diagonal_params(const TwoQubitState& s, double tol) {
  const Mat4 r = s.arranged();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      if ((i == 1 && j == 2) || (i == 2 && j == 1)) continue;
      if (std::abs(r(i, j)) > tol) return std::nullopt;
    }
  const double a = r(1, 1).real();
  if (std::abs(r(2, 2).real() - a) > tol) return std::nullopt;
  if (std::abs(r(0, 0).real() - (0.5 - a)) > tol || std::abs(r(3, 3).real() - (0.5 - a)) > tol)
    return std::nullopt;
  return BellDiagParams{a, r(1, 2)};
}

}  // namespace dqd

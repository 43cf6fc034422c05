#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Dense>

namespace dqd {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// Basis index is 2*q1 + q2 with up = 0, so the computational order is
// (up-up, up-dn, dn-up, dn-dn). The ordering tag only records how the
// Bell-diagonal pattern is read off; rho itself is always stored in the
// computational order.
enum class BasisOrdering {
  Computational,  // up-up, up-dn, dn-up, dn-dn
  Psi,            // same arrangement, used for Psi+- initial states
  Phi,            // up-dn, up-up, dn-dn, dn-up, used for Phi+- initial states
};

const char* to_string(BasisOrdering o) noexcept;

/// Permutation p such that the k-th row of the arranged matrix is row p[k]
/// of the computational matrix.
std::array<int, 4> arrangement(BasisOrdering o) noexcept;

struct StateTolerances {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-10;
};

class TwoQubitState {
 public:
  /// Validates Hermiticity, unit trace and positivity; throws InvalidParameter.
  explicit TwoQubitState(const Mat4& rho, BasisOrdering ordering = BasisOrdering::Computational,
                         const StateTolerances& tol = {});

  const Mat4& rho() const { return rho_; }
  BasisOrdering ordering() const { return ordering_; }
  double min_eigenvalue() const { return min_eig_; }

  /// rho permuted into the tagged arrangement.
  Mat4 arranged() const;

 private:
  Mat4 rho_;
  BasisOrdering ordering_;
  double min_eig_;
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

namespace spec {
struct Bell {
  BellKind which = BellKind::PsiMinus;
};
/// (1-p) I/4 + p |Psi-><Psi-|
struct Werner {
  double p = 1.0;
};
/// sqrt(a)|00> + sqrt(b)e^{i al}|10> + sqrt(b)e^{i be}|01> - sqrt(a)e^{i(al+be)}|11>, a+b = 1/2
struct EntFamily {
  double a = 0.25;
  double b = 0.25;
  double alpha = 0.0;
  double beta = 0.0;
};
/// (|00> + |10> + |01> + e^{i gamma}|11>)/2
struct PhaseFamily {
  double gamma = 0.0;
};
/// Bell-diagonal pattern diag(1/2-a, a, a, 1/2-a) with inner coherence b.
struct BellDiagonalAB {
  double a = 0.5;
  cplx b = -0.5;
  BasisOrdering ordering = BasisOrdering::Psi;
};
struct Raw {
  Mat4 rho = Mat4::Identity() / 4.0;
  BasisOrdering ordering = BasisOrdering::Computational;
};
}  // namespace spec

using StateSpec = std::variant<spec::Bell, spec::Werner, spec::EntFamily, spec::PhaseFamily,
                               spec::BellDiagonalAB, spec::Raw>;

TwoQubitState make_state(const StateSpec& s);

/// Short human-readable form, e.g. "werner:p=0.33". Parsed by io::parse_state_spec.
std::string describe(const StateSpec& s);

struct BlochForm {
  Vec3 x = Vec3::Zero();
  Vec3 y = Vec3::Zero();
  Mat3 T = Mat3::Zero();
};

BlochForm bloch_decompose(const TwoQubitState& s);
BlochForm bloch_decompose(const Mat4& rho);
Mat4 reconstruct(const BlochForm& f);

double purity(const TwoQubitState& s);

struct SingletTripletWeights {
  double Tm1 = 0.0;
  double T0 = 0.0;
  double Tp1 = 0.0;
  double S0 = 0.0;
};

SingletTripletWeights singlet_triplet_weights(const TwoQubitState& s);

struct BellDiagParams {
  double a = 0.0;
  cplx b = 0.0;
};

/// a, b if the arranged matrix matches the Bell-diagonal pattern (other
/// entries below tol), otherwise nullopt.
std::optional<BellDiagParams> bell_diagonal_params(const TwoQubitState& s, double tol = 1e-10);

// Pauli matrices.
Eigen::Matrix2cd pauli(int i);
Mat4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace dqd

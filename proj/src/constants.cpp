#include "dqd/constants.hpp"

#include <cmath>
#include <string>

#include "dqd/error.hpp"

namespace dqd {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Validity: return "validity";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::CpViolation: return "cp-violation";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::InvalidParameter:
    case ErrorKind::Validity:
    case ErrorKind::Numerical:
    case ErrorKind::CpViolation: return 3;
  }
  return 3;
}

PhysicalConstants::PhysicalConstants(double hbar, double mu_B, double g_factor)
    : hbar_(hbar), mu_B_(mu_B), g_factor_(std::abs(g_factor)) {
  if (!(hbar > 0.0) || !(mu_B > 0.0) || !(g_factor_ > 0.0) || !std::isfinite(hbar) ||
      !std::isfinite(mu_B) || !std::isfinite(g_factor)) {
    throw Error(ErrorKind::InvalidParameter, "physical constants must be finite and positive");
  }
}

namespace {

bool is_spin_value(double I) {
  const double twice = 2.0 * I;
  return I > 0.0 && std::abs(twice - std::round(twice)) < 1e-12;
}

}  // namespace

DotParameters::DotParameters(double A_total, double N_nuclei, double I_nuclear, double B_field,
                             PhysicalConstants constants)
    : A_total_(A_total),
      N_nuclei_(N_nuclei),
      I_nuclear_(I_nuclear),
      B_field_(B_field),
      constants_(constants) {
  if (!(A_total > 0.0) || !std::isfinite(A_total)) {
    throw Error(ErrorKind::InvalidParameter, "A_total must be positive");
  }
  if (!(N_nuclei >= 1.0) || !std::isfinite(N_nuclei)) {
    throw Error(ErrorKind::InvalidParameter, "N_nuclei must be >= 1");
  }
  if (!is_spin_value(I_nuclear)) {
    throw Error(ErrorKind::InvalidParameter,
                "I_nuclear must be a positive multiple of 1/2, got " + std::to_string(I_nuclear));
  }
  if (!std::isfinite(B_field)) {
    throw Error(ErrorKind::InvalidParameter, "B_field must be finite");
  }
}

double DotParameters::t2star_theory() const {
  const double I = I_nuclear_;
  return constants_.hbar() * std::sqrt(6.0 / (I * (I + 1.0))) * std::sqrt(N_nuclei_) / A_total_;
}

double DotParameters::validity_window() const {
  return constants_.hbar() * N_nuclei_ / A_total_;
}

DotParameters DotParameters::with_field(double B) const {
  return DotParameters(A_total_, N_nuclei_, I_nuclear_, B, constants_);
}

}  // namespace dqd

#pragma once

// Units used throughout: energies in micro-eV, times in ns, fields in Tesla.

namespace dqd {

class PhysicalConstants {
 public:
  PhysicalConstants() = default;
  PhysicalConstants(double hbar, double mu_B, double g_factor);

  double hbar() const { return hbar_; }          // ueV ns
  double mu_B() const { return mu_B_; }          // ueV / T
  double g_factor() const { return g_factor_; }  // magnitude, dimensionless

 private:
  double hbar_ = 0.6582119569;
  double mu_B_ = 57.883818;
  double g_factor_ = 0.44;
};

/// Parameters of one quantum dot in the uniform-coupling (box) model.
///
/// All N nuclei couple with the same constant alpha = A/N. Defaults are the
/// GaAs values: A = 83 ueV, N = 1.5e6, I = 3/2.
class DotParameters {
 public:
  DotParameters() = default;
  DotParameters(double A_total, double N_nuclei, double I_nuclear, double B_field,
                PhysicalConstants constants = {});

  double A_total() const { return A_total_; }
  double N_nuclei() const { return N_nuclei_; }
  double I_nuclear() const { return I_nuclear_; }
  double B_field() const { return B_field_; }
  const PhysicalConstants& constants() const { return constants_; }

  double alpha() const { return A_total_ / N_nuclei_; }
  /// Variance of the nuclear polarization m in the infinite-temperature bath.
  double sigma2() const { return N_nuclei_ * I_nuclear_ * (I_nuclear_ + 1.0) / 3.0; }
  /// Electron Zeeman energy |g| mu_B B; keeps the sign of B.
  double zeeman() const { return constants_.g_factor() * constants_.mu_B() * B_field_; }
  /// hbar sqrt(6/(I(I+1))) sqrt(N)/A, the high-field Gaussian dephasing time.
  double t2star_theory() const;
  /// Short-time limit hbar N/A of the box model.
  double validity_window() const;

  DotParameters with_field(double B) const;

 private:
  double A_total_ = 83.0;
  double N_nuclei_ = 1.5e6;
  double I_nuclear_ = 1.5;
  double B_field_ = 0.0;
  PhysicalConstants constants_{};
};

}  // namespace dqd

#pragma once

#include <optional>

#include "dqd/state.hpp"

namespace dqd {

/// Which K matrix the upper bound pairs with which L matrix. AsPrinted is
/// K_x with L_y and K_y with L_x; Swapped pairs K_x with L_x.
enum class UpperPairing { AsPrinted, Swapped };

struct DiscordBounds {
  double ds_lower = 0.0;
  double ds_upper = 0.0;
  double rescaled_lower = 0.0;
  double rescaled_upper = 0.0;
  bool coincide = true;    // |upper - lower| < 1e-9
  bool degenerate = false;  // top eigenvalue of K_x or K_y was degenerate
};

/// 1/4 max(Tr K_x - k_x, Tr K_y - k_y)
double geometric_discord_lower(const BlochForm& f);
double geometric_discord_lower(const TwoQubitState& s);

struct UpperBound {
  double value = 0.0;
  bool degenerate = false;
};

UpperBound geometric_discord_upper(const BlochForm& f, UpperPairing pairing = UpperPairing::AsPrinted);
double geometric_discord_upper(const TwoQubitState& s, UpperPairing pairing = UpperPairing::AsPrinted);

/// (1/2)(1 - sqrt3/2)[1 - sqrt(1 - ds / (2 purity))]
double rescaled_discord(double ds, double purity);

/// Upper end of the rescaled_discord range (zero radicand). Pure maximally
/// entangled states give 1/2 (1 - sqrt3/2)^2.
inline constexpr double kRescaledMax = 0.5 * (1.0 - 0.86602540378443864676);

DiscordBounds discord_bounds(const TwoQubitState& s, UpperPairing pairing = UpperPairing::AsPrinted);

enum class DiscordRegime { GBelow, GAbove, Boundary };

const char* to_string(DiscordRegime r) noexcept;

struct BellDiagonalDiscord {
  double ds = 0.0;
  DiscordRegime regime = DiscordRegime::Boundary;
  double g = 0.0;  // +inf when a = 1/4 and b != 0, NaN for the maximally mixed state
};

BellDiagonalDiscord bell_diagonal_discord(double a, cplx b);

/// |Tr(sx sx rho)| / |Tr(sz sz rho)|; +inf for a vanishing denominator,
/// nullopt when both traces vanish.
std::optional<double> g_ratio(const TwoQubitState& s);
std::optional<double> g_ratio(const BlochForm& f);

double concurrence(const TwoQubitState& s);

/// Brute-force one-sided geometric discord: minimum over projective
/// measurements on qubit A (Bloch angles theta, phi) of ||rho - Pi(rho)||^2.
/// A theta-phi grid of the given resolution seeds a pattern search.
double oracle_one_sided_discord(const TwoQubitState& s, int grid_resolution = 24);

}  // namespace dqd

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dqd/hyperfine.hpp"
#include "dqd/measures.hpp"
#include "dqd/state.hpp"

namespace dqd {

/// Each qubit goes through its own channel: populations mix with p,
/// the up-dn coherence is multiplied by c (its conjugate element by c*).
/// Throws CpViolation unless 0 <= p <= 1 and |c| <= 1 - p + cp_tol.
TwoQubitState apply_channel(const TwoQubitState& rho0, double pA, cplx cA, double pB, cplx cB,
                            double cp_tol = 1e-6);
TwoQubitState apply_channel(const TwoQubitState& rho0, double p, cplx c, double cp_tol = 1e-6);

struct CorrelationReport {
  double t = 0.0;
  double p = 0.0;
  cplx c = 1.0;  // lab frame
  std::optional<BellDiagParams> bell;
  double purity = 1.0;
  DiscordBounds bounds;
  std::optional<double> g;  // nullopt: 0/0
  double concurrence = 0.0;
  SingletTripletWeights st;
  double min_eigenvalue = 0.0;
};

struct CorrelationTrajectory {
  std::vector<CorrelationReport> reports;
  BasisOrdering ordering = BasisOrdering::Computational;

  std::vector<double> times() const;
  std::vector<double> rescaled_lower() const;
  std::vector<double> rescaled_upper() const;
  std::vector<double> concurrence() const;
  /// g series with undefined entries as NaN.
  std::vector<double> g() const;
};

struct EvolveOptions {
  UpperPairing pairing = UpperPairing::AsPrinted;
  bool rotating_frame = true;  // drop the single-dot Zeeman precession
  double cp_tol = 1e-6;
};

CorrelationReport correlation_report(const TwoQubitState& rho, double t, double p, cplx c,
                                     const EvolveOptions& opts = {});

/// Identical dots.
CorrelationTrajectory evolve(const TwoQubitState& rho0, const ChannelTrajectory& traj,
                             const EvolveOptions& opts = {});
/// Two dots with their own channels on the same time grid.
CorrelationTrajectory evolve(const TwoQubitState& rho0, const ChannelTrajectory& trajA,
                             const ChannelTrajectory& trajB, const EvolveOptions& opts = {});

/// g(t) evaluated directly from a channel model, for root refinement.
std::function<std::optional<double>(double)> g_evaluator(const TwoQubitState& rho0,
                                                         const ChannelModel& model,
                                                         const EvolveOptions& opts = {});

enum class CrossingDirection { AboveToBelow, BelowToAbove };

const char* to_string(CrossingDirection d) noexcept;

struct KinkEvent {
  double t_cross = 0.0;
  CrossingDirection direction = CrossingDirection::AboveToBelow;
  double slope_jump = 0.0;  // right minus left one-sided slope of the lower rescaled discord
};

/// Sign changes of g - 1 between samples (|g - 1| <= touch_tol counts as
/// zero, so touches and g == 1 runs are not crossings). Roots are bisected to
/// 1e-6 ns with g_at when given, else linearly interpolated.
std::vector<KinkEvent> find_g_crossings(
    const CorrelationTrajectory& ct,
    const std::function<std::optional<double>(double)>& g_at = {}, double touch_tol = 1e-9);

enum class ExtremumKind { Min, Max };

struct Extremum {
  double t = 0.0;
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::Min;
};

/// Interior local extrema by discrete comparison. Runs equal within
/// rel_tol * max|v| collapse to one event at the run center; runs touching
/// either end are not extrema. Single-sample extrema are refined by a
/// three-point parabola.
std::vector<Extremum> find_extrema(const std::vector<double>& t, const std::vector<double>& v,
                                   double rel_tol = 1e-12);

struct Revival {
  double t_dip = 0.0, dip = 0.0;
  double t_peak = 0.0, peak = 0.0;
  bool interior = false;  // peak is a strict interior local maximum, not the window end
};

/// Partial revival after the initial decay: the first interior local
/// minimum, followed by a maximum at least min_rise * v[0] above it. The
/// maximum is the first interior local max after the dip, or the end of the
/// window when the series keeps rising into a plateau.
std::optional<Revival> find_revival(const std::vector<double>& t, const std::vector<double>& v,
                                    double min_rise = 1e-3);

/// t0, t0 + step, ..., t1 (the count is rounded, t_k = t0 + k step).
std::vector<double> uniform_grid(double t0, double t1, double step);
/// 0-20 ns, step 0.02 ns.
std::vector<double> short_grid(double t_max = 20.0, double step = 0.02);
/// 0-50 ns at 0.02 ns, then 52-t_max at 2 ns.
std::vector<double> long_grid(double t_max = 12000.0);

}  // namespace dqd

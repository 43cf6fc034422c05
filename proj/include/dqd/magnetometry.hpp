#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqd/evolution.hpp"

namespace dqd {

/// Composite Simpson on a uniform grid (3/8 rule on the last three
/// intervals when the interval count is odd).
double simpson(const std::vector<double>& t, const std::vector<double>& v);

struct MValue {
  double lower = 0.0;  // from the lower rescaled bound; the reported M
  double upper = 0.0;
};

/// (1/D(0)) * integral of the rescaled discord over [0, window]. Throws
/// InvalidParameter when D(0) vanishes.
MValue M_from_trajectory(const CorrelationTrajectory& ct, double window = 20.0);
MValue M_of_B(const TwoQubitState& rho0, const DotParameters& dot, double B, double window = 20.0,
              double step = 0.02);

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
};

struct GExtrema {
  std::optional<TimedValue> min;  // first local minimum of g
  std::optional<TimedValue> max;  // first local maximum after it
};

GExtrema g_extrema(const CorrelationTrajectory& ct, double rel_tol = 1e-9);

/// First sample from which the concurrence stays <= zero_tol for at least
/// `run` consecutive samples.
std::optional<double> esd_time(const CorrelationTrajectory& ct, int run = 5, double zero_tol = 1e-12);
std::optional<double> esd_time(const std::vector<double>& t, const std::vector<double>& conc,
                               int run = 5, double zero_tol = 1e-12);

/// Lower rescaled discord averaged (trapezoid) over [t0, t1], 2 ns samples.
double d_longtime(const TwoQubitState& rho0, const DotParameters& dot, double B, double t0 = 4000.0,
                  double t1 = 6000.0);

struct SweepRow {
  double B = 0.0;
  std::optional<MValue> M;
  GExtrema g;
  std::vector<double> kink_times;
  std::optional<double> esd;
  std::optional<double> d_longtime;
};

struct SweepOptions {
  bool M = true;
  bool g_extrema = true;
  bool kinks = true;
  bool esd = true;
  bool longtime = false;
  double window = 20.0;          // M window
  double extrema_window = 50.0;  // g extrema search window
  double step = 0.02;
  EvolveOptions evolve;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// B values must be strictly increasing. Rows are computed independently
/// (in parallel) and assembled in B order.
SweepTable sweep(const TwoQubitState& rho0, const DotParameters& dot, const std::vector<double>& Bs,
                 const SweepOptions& opts = {});

enum class CalibrationQuantity { M, GMaxValue, GMinValue, DLongtime };

const char* to_string(CalibrationQuantity q) noexcept;

struct CalibrationCurve {
  CalibrationQuantity quantity = CalibrationQuantity::M;
  std::vector<double> B;
  std::vector<double> value;
  bool monotone = false;  // strictly increasing or strictly decreasing in B
};

CalibrationCurve make_curve(CalibrationQuantity q, std::vector<double> B, std::vector<double> value);
/// Knots from the rows that carry the quantity.
CalibrationCurve curve_from_sweep(const SweepTable& table, CalibrationQuantity q);

struct FieldEstimate {
  double B = 0.0;
  double B_lo = 0.0, B_hi = 0.0;  // bracketing knots
};

/// Piecewise-linear inversion of a monotone curve. Throws InvalidParameter
/// for non-monotone curves and out-of-range values.
FieldEstimate invert_field(const CalibrationCurve& curve, double measured);

}  // namespace dqd

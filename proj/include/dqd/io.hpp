#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dqd/magnetometry.hpp"

namespace dqd {

const char* version() noexcept;

/// Parses the CLI state syntax:
///   bell:psi- | bell:psi+ | bell:phi+ | bell:phi-
///   werner:p=0.33
///   belldiag:a=0.4,b=0.4[,bi=0][,order=phi]
///   phase:gamma=1.5707963
///   ent:a=0.3,alpha=0.1,beta=0.2        (b = 1/2 - a)
///   raw:<file>                            (.json or CSV of re,im pairs)
StateSpec parse_state_spec(const std::string& text);

/// 16 complex entries, row-major. CSV: re,im per entry (any comma or
/// whitespace separation, '#' comments). JSON: 4x4 array of [re, im].
Mat4 parse_raw_csv(const std::string& text);
Mat4 parse_raw_json(const std::string& text);
Mat4 read_raw_state(const std::string& path);

struct RunConfig {
  double A_total = 83.0;
  double N_nuclei = 1.5e6;
  double I_nuclear = 1.5;
  double g_factor = 0.44;
  std::string state = "bell:psi-";
  std::vector<double> B{0.0};
  double t_max = 20.0;
  double step = 0.02;
  bool long_grid = false;
  std::string quadrature = "radial";  // radial | cartesian
  int m_nodes = 0;                    // cartesian overrides, 0 = rule
  int q_nodes = 0;
  std::string output = "-";
  bool normalize = false;
  bool swap_pairing = false;
  std::string metric = "all";  // sweep: all | M | g-extrema | esd | longtime
  double window = 20.0;

  bool operator==(const RunConfig&) const = default;

  DotParameters dot(double B_field = 0.0) const;
  std::vector<double> grid() const;
  EvolveOptions evolve_options() const;
};

std::string serialize_config(const RunConfig& c);  // one-line JSON
RunConfig parse_config(const std::string& json_text);
RunConfig read_config(const std::string& path);

/// "start:stop:step" (inclusive stop), or a comma-separated list.
std::vector<double> parse_field_list(const std::string& text);

/// %.17g; NaN as an empty field.
std::string fmt(double x);

void write_header(std::ostream& os, const RunConfig& c, const std::vector<std::string>& extra = {});
void write_channel_csv(std::ostream& os, const ChannelTrajectory& tr);
void write_trajectory_csv(std::ostream& os, const CorrelationTrajectory& ct, bool normalize = false);
void write_sweep_csv(std::ostream& os, const SweepTable& t);
void write_curve_csv(std::ostream& os, const CalibrationCurve& c);

/// Machine-readable error record, one JSON line.
std::string error_record(const std::string& kind, const std::string& message);

}  // namespace dqd

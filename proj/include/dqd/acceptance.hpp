#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dqd/magnetometry.hpp"

namespace dqd {

/// Least-squares fit of exp(-(t/T)^2) to y(t); returns T.
double fit_gaussian_decay(const std::vector<double>& t, const std::vector<double>& y);

namespace random_states {

using Rng = std::mt19937_64;

Mat4 density(Rng& rng);  // Ginibre G G^dagger / Tr
Mat4 pure(Rng& rng);
Mat4 x_state(Rng& rng);
Mat4 bell_diagonal(Rng& rng);
Mat4 zero_local_bloch(Rng& rng);  // Bell-diagonal under a random U x V
Mat4 max_entangled_family(Rng& rng);
Eigen::Matrix2cd su2(Rng& rng);

}  // namespace random_states

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> only;  // empty: all criteria
  std::uint64_t seed = 20131105;
};

/// Runs the acceptance checks in order; on_result fires as each finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);

}  // namespace dqd

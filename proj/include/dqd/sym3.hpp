#pragma once

#include <array>

namespace dqd {

struct Sym3Eigen {
  std::array<double, 3> values{};            // descending
  std::array<std::array<double, 3>, 3> vectors{};  // vectors[k] belongs to values[k], unit norm
  int sweeps = 0;
};

/// Cyclic Jacobi on a symmetric 3x3 matrix (only the upper triangle is read).
/// Converges when the off-diagonal norm drops below 1e-15 of the Frobenius norm.
Sym3Eigen sym3_eigen(const std::array<std::array<double, 3>, 3>& a);

}  // namespace dqd

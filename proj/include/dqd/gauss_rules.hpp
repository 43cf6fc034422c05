#pragma once

#include <vector>

namespace dqd {

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Golub-Welsch: nodes and weights from the symmetric Jacobi matrix with
/// diagonal a (size n) and off-diagonal b (size n-1); mu0 is the total mass.
/// Only the first row of the eigenvector matrix is carried through the QL
/// iteration, so the cost is O(n^2). Nodes come out ascending.
GaussRule golub_welsch(std::vector<double> a, std::vector<double> b, double mu0);

/// Weight 1 on [-1, 1]; weights sum to 2.
GaussRule gauss_legendre(int n);
/// Standard normal weight; weights sum to 1.
GaussRule gauss_hermite_normal(int n);
/// Weight e^{-x} on (0, inf); weights sum to 1.
GaussRule gauss_laguerre(int n);

}  // namespace dqd

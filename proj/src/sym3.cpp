#include "dqd/sym3.hpp"

#include <algorithm>
#include <cmath>

namespace dqd {

Sym3Eigen sym3_eigen(const std::array<std::array<double, 3>, 3>& in) {
  double A[3][3];
  double R[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) A[i][j] = A[j][i] = in[i][j];

  double frob = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) frob += A[i][j] * A[i][j];

  Sym3Eigen out;
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double off = A[0][1] * A[0][1] + A[0][2] * A[0][2] + A[1][2] * A[1][2];
    if (off <= 1e-30 * frob || off == 0.0) break;
    out.sweeps = sweep + 1;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = A[p][q];
        if (apq == 0.0) continue;
        const double theta = (A[q][q] - A[p][p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        A[p][p] -= t * apq;
        A[q][q] += t * apq;
        A[p][q] = A[q][p] = 0.0;
        for (int r = 0; r < 3; ++r) {
          if (r != p && r != q) {
            const double arp = A[r][p], arq = A[r][q];
            A[r][p] = A[p][r] = arp - s * (arq + tau * arp);
            A[r][q] = A[q][r] = arq + s * (arp - tau * arq);
          }
          const double rrp = R[r][p], rrq = R[r][q];
          R[r][p] = rrp - s * (rrq + tau * rrp);
          R[r][q] = rrq + s * (rrp - tau * rrq);
        }
      }
    }
  }

  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return A[i][i] > A[j][j]; });
  for (int k = 0; k < 3; ++k) {
    out.values[k] = A[idx[k]][idx[k]];
    for (int r = 0; r < 3; ++r) out.vectors[k][r] = R[r][idx[k]];
  }
  return out;
}

}  // namespace dqd

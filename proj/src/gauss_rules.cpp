#include "dqd/gauss_rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dqd/error.hpp"

namespace dqd {

GaussRule golub_welsch(std::vector<double> d, std::vector<double> b, double mu0) {
  const int n = static_cast<int>(d.size());
  if (n < 1 || static_cast<int>(b.size()) != n - 1)
    throw Error(ErrorKind::InvalidParameter, "golub_welsch: bad Jacobi matrix size");

  std::vector<double> e(n, 0.0);
  std::copy(b.begin(), b.end(), e.begin());
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();

  // implicit QL with Wilkinson-type shifts (tqli), eigenvectors restricted to row 0
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw Error(ErrorKind::Numerical, "golub_welsch: QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i;
      bool underflow = false;
      for (i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double bb = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * bb;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - bb;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.x[k] = d[idx[k]];
    rule.w[k] = mu0 * z[idx[k]] * z[idx[k]];
  }
  return rule;
}

GaussRule gauss_legendre(int n) {
  std::vector<double> a(n, 0.0), b(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) b[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  GaussRule r = golub_welsch(a, b, 2.0);
  // symmetrize to remove the last-bit asymmetry of the iteration
  for (int k = 0; k < n / 2; ++k) {
    const double x = 0.5 * (r.x[n - 1 - k] - r.x[k]);
    const double w = 0.5 * (r.w[n - 1 - k] + r.w[k]);
    r.x[k] = -x;
    r.x[n - 1 - k] = x;
    r.w[k] = r.w[n - 1 - k] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

GaussRule gauss_hermite_normal(int n) {
  std::vector<double> a(n, 0.0), b(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) b[k - 1] = std::sqrt(static_cast<double>(k));
  GaussRule r = golub_welsch(a, b, 1.0);
  for (int k = 0; k < n / 2; ++k) {
    const double x = 0.5 * (r.x[n - 1 - k] - r.x[k]);
    const double w = 0.5 * (r.w[n - 1 - k] + r.w[k]);
    r.x[k] = -x;
    r.x[n - 1 - k] = x;
    r.w[k] = r.w[n - 1 - k] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

GaussRule gauss_laguerre(int n) {
  std::vector<double> a(n), b(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) a[k] = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) b[k - 1] = k;
  return golub_welsch(a, b, 1.0);
}

}  // namespace dqd

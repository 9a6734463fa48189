#pragma once

// Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
// eigenvalues and inverse iteration for eigenvectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace intertwine {

struct SymmetricTridiagonal {
  std::vector<double> diag;  // size n
  std::vector<double> off;   // size n - 1

  std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below lambda (Sturm count of the LDL^T pivots).
inline int count_below(const SymmetricTridiagonal& t, double lambda) {
  const std::size_t n = t.size();
  // A vanishing pivot is replaced by -pivmin before it is counted.
  double max_off2 = 1.0;
  for (double e : t.off) max_off2 = std::max(max_off2, e * e);
  const double pivmin = std::numeric_limits<double>::min() * max_off2;
  int count = 0;
  double q = t.diag[0] - lambda;
  for (std::size_t i = 0;;) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
    if (++i == n) break;
    q = t.diag[i] - lambda - t.off[i - 1] * t.off[i - 1] / q;
  }
  return count;
}

/// Gershgorin interval containing the spectrum.
inline std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < t.size() ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

/// k-th smallest eigenvalue (k = 0 is the lowest) by bisection.
inline double eigenvalue_by_bisection(const SymmetricTridiagonal& t, int k) {
  if (k < 0 || static_cast<std::size_t>(k) >= t.size()) throw std::out_of_range("eigenvalue index");
  auto [lo, hi] = gershgorin_bounds(t);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (count_below(t, mid) > k ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Lowest k eigenvalues in ascending order.
inline std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, int k) {
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) out[i] = eigenvalue_by_bisection(t, i);
  return out;
}

/// Eigenvector for a converged eigenvalue by inverse iteration (Euclidean unit norm).
inline std::vector<double> eigenvector_by_inverse_iteration(const SymmetricTridiagonal& t, double lambda,
                                                            int iterations = 3) {
  const std::size_t n = t.size();
  // Nudge the shift off the eigenvalue so the factorization stays finite.
  const auto [glo, ghi] = gershgorin_bounds(t);
  const double shift = lambda - 1e-13 * std::max(1.0, ghi - glo);
  std::vector<double> v(n, 1.0), c(n), d(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * std::sin(0.7 * static_cast<double>(i));
  for (int it = 0; it < iterations; ++it) {
    // Thomas algorithm for (T - shift) y = v.
    double denom = t.diag[0] - shift;
    c[0] = n > 1 ? t.off[0] / denom : 0.0;
    d[0] = v[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = t.diag[i] - shift - t.off[i - 1] * c[i - 1];
      if (denom == 0.0) denom = std::numeric_limits<double>::epsilon();
      c[i] = i + 1 < n ? t.off[i] / denom : 0.0;
      d[i] = (v[i] - t.off[i - 1] * d[i - 1]) / denom;
    }
    v[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) v[i] = d[i] - c[i] * v[i + 1];
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

}  // namespace intertwine

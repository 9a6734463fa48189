#pragma once

// Finite-difference cross-check of the closed-form spectra.  The solver only
// sees the potential; closed forms enter solely through the choice of the
// truncation box and the comparison in compare_with_closed_form().

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "models.hpp"
#include "report.hpp"
#include "tolerances.hpp"
#include "tridiagonal.hpp"

namespace intertwine {

struct GridConfig {
  std::vector<int> points{2000, 4000, 8000};  // interior points per refinement level, coarse to fine
  std::optional<Interval> bounds;             // truncation box; derived from the closed forms when empty
};

struct OracleResult {
  Interval bounds;
  std::vector<int> points;
  std::vector<double> spacings;
  std::vector<std::vector<double>> level_eigenvalues;  // [grid level][state]
  std::vector<double> eigenvalues;                      // Richardson-extrapolated, ascending
  std::vector<double> error_estimates;                  // |finest - extrapolated|
  std::vector<double> grid;                             // finest interior nodes
  std::vector<std::vector<double>> eigenvectors;        // finest grid, sum u^2 h = 1
  std::optional<int> count_below_threshold;             // on the finest grid
};

inline constexpr int kMaxOracleStates = 12;
inline constexpr double kOracleAmplitudeRatio = 1e-12;

/// Truncation box: bounded ends stay, open ends are cut where every requested
/// closed-form state has dropped below 1e-12 of its peak.
inline Interval oracle_bounds(ModelId id, const ParameterSet& p, int k) {
  const DomainSpec d = domain(id);
  if (!d.hi_infinite) return {d.lo, d.hi};
  const Interval s = support_up_to(id, p, k - 1);
  const bool radial = reduced_problem(id, p).multiply_by_coordinate;
  constexpr int samples = 8000;
  double hi = 0.0;
  for (int n = 0; n < k; ++n) {
    const EigenState psi = eigenfunction(id, p, n);
    std::vector<double> a(samples + 1);
    double peak = 0.0;
    for (int i = 0; i <= samples; ++i) {
      const double x = s.lo + (s.hi - s.lo) * i / samples;
      a[i] = std::abs(psi.value(x) * (radial ? x : 1.0));
      peak = std::max(peak, a[i]);
    }
    int last = samples;
    while (last > 0 && a[last] < kOracleAmplitudeRatio * peak) --last;
    hi = std::max(hi, s.lo + (s.hi - s.lo) * std::min(last + 1, samples) / samples);
  }
  return {d.lo_infinite ? -hi : d.lo, hi};
}

namespace detail {

inline SymmetricTridiagonal fd_matrix(const ReducedProblem& rp, const Interval& b, int points, double& h,
                                      std::vector<double>& nodes) {
  h = b.length() / (points + 1);
  SymmetricTridiagonal t;
  t.diag.resize(points);
  t.off.assign(points - 1, -rp.kappa / (h * h));
  nodes.resize(points);
  for (int i = 0; i < points; ++i) {
    nodes[i] = b.lo + (i + 1) * h;
    t.diag[i] = 2.0 * rp.kappa / (h * h) + rp.potential(nodes[i]);
  }
  return t;
}

}  // namespace detail

/// Lowest k eigenvalues of the central-difference discretization with
/// Dirichlet ends, Richardson-extrapolated over the two finest grids.
inline OracleResult fd_eigensolve(ModelId id, const ParameterSet& p, int k, const GridConfig& cfg = {}) {
  validate(id, p);
  if (k < 1 || k > kMaxOracleStates) {
    throw Error(ErrorKind::InvalidParameters, "state count must be in 1.." + std::to_string(kMaxOracleStates));
  }
  if (cfg.points.size() < 2) throw Error(ErrorKind::InvalidParameters, "need at least two grid levels");
  for (int n : cfg.points) {
    if (n < 64) throw Error(ErrorKind::InvalidParameters, "grid levels need at least 64 interior points");
  }
  if (const auto count = bound_state_count(id, p); count && k > *count) {
    throw Error(ErrorKind::IndexOutOfSpectrum, std::string(model_name(id)) + " has only " + std::to_string(*count) +
                                                   " bound states");
  }
  const DomainSpec d = domain(id);
  const ReducedProblem rp = reduced_problem(id, p);

  OracleResult out;
  if (cfg.bounds) {
    out.bounds = *cfg.bounds;
    if (!(out.bounds.lo < out.bounds.hi) || out.bounds.lo < d.lo || out.bounds.hi > d.hi) {
      throw Error(ErrorKind::InvalidParameters, "truncation bounds must lie inside the model domain");
    }
  } else {
    // The continuum count needs room for every bound state, not just the first k.
    const auto count = bound_state_count(id, p);
    out.bounds = oracle_bounds(id, p, count ? std::max(k, *count) : k);
  }

  std::vector<int> points = cfg.points;
  std::sort(points.begin(), points.end());
  out.points = points;
  SymmetricTridiagonal finest;
  for (int n : points) {
    double h = 0.0;
    std::vector<double> nodes;
    SymmetricTridiagonal t = detail::fd_matrix(rp, out.bounds, n, h, nodes);
    out.spacings.push_back(h);
    out.level_eigenvalues.push_back(lowest_eigenvalues(t, k));
    if (n == points.back()) {
      finest = std::move(t);
      out.grid = std::move(nodes);
    }
  }

  const std::size_t L = points.size();
  const double r = out.spacings[L - 2] / out.spacings[L - 1];
  for (int j = 0; j < k; ++j) {
    const double fine = out.level_eigenvalues[L - 1][j], coarse = out.level_eigenvalues[L - 2][j];
    const double ext = fine + (fine - coarse) / (r * r - 1.0);
    out.eigenvalues.push_back(ext);
    out.error_estimates.push_back(std::abs(fine - ext));
  }

  const double h = out.spacings.back();
  for (int j = 0; j < k; ++j) {
    std::vector<double> v = eigenvector_by_inverse_iteration(finest, out.level_eigenvalues[L - 1][j]);
    const double scale = 1.0 / std::sqrt(h);
    auto first = std::find_if(v.begin(), v.end(), [&](double x) { return std::abs(x) > 1e-6; });
    const double sign = (first != v.end() && *first < 0) ? -1.0 : 1.0;
    for (double& x : v) x *= sign * scale;
    out.eigenvectors.push_back(std::move(v));
  }

  // Ground-state mass within 2% of a truncated (not physical) boundary.
  const double band = 0.02 * out.bounds.length();
  double mass_lo = 0.0, mass_hi = 0.0;
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    const double m = out.eigenvectors[0][i] * out.eigenvectors[0][i] * h;
    if (out.grid[i] < out.bounds.lo + band) mass_lo += m;
    if (out.grid[i] > out.bounds.hi - band) mass_hi += m;
  }
  const bool lo_truncated = d.lo_infinite || out.bounds.lo > d.lo;
  const bool hi_truncated = d.hi_infinite || out.bounds.hi < d.hi;
  if ((lo_truncated && mass_lo > 1e-6) || (hi_truncated && mass_hi > 1e-6)) {
    throw Error(ErrorKind::TruncationTooTight, std::string(model_name(id)) + ": ground state reaches the box edge");
  }

  if (const auto threshold = continuum_threshold(id, p); threshold && bound_state_count(id, p)) {
    out.count_below_threshold = count_below(finest, *threshold);
  }
  return out;
}

/// Least-squares slope of log(error) against log(h).
inline double observed_order(const std::vector<double>& spacings, const std::vector<double>& errors) {
  const std::size_t L = spacings.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < L; ++i) {
    const double x = std::log(spacings[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (L * sxy - sx * sy) / (L * sxx - sx * sx);
}

/// One report per level (eigenvalue discrepancy, eigenvector overlap, order),
/// plus a bound-state count row when the spectrum is finite.
inline std::vector<VerificationReport> compare_with_closed_form(ModelId id, const ParameterSet& p, int k,
                                                                const GridConfig& cfg = {},
                                                                const Tolerances& tol = {}) {
  const OracleResult res = fd_eigensolve(id, p, k, cfg);
  const bool radial = reduced_problem(id, p).multiply_by_coordinate;
  std::vector<VerificationReport> out;
  for (int n = 0; n < k; ++n) {
    VerificationReport r;
    r.relation_id = "oracle.finite_difference_eigenpair";
    r.model = id;
    r.params = p;
    r.n = r.n_max = n;
    const EigenState psi = eigenfunction(id, p, n);
    const double exact = psi.energy();
    const double scale = std::max(std::abs(exact), 1e-300);
    r.below("relative_discrepancy", std::abs(res.eigenvalues[n] - exact) / scale, tol.oracle);
    r.info("error_estimate", res.error_estimates[n]);
    r.info("within_estimate", std::abs(res.eigenvalues[n] - exact) <= res.error_estimates[n] ? 1.0 : 0.0);

    double dot = 0.0, uu = 0.0, pp = 0.0;
    for (std::size_t i = 0; i < res.grid.size(); ++i) {
      const double x = res.grid[i];
      const double v = psi.value(x) * (radial ? x : 1.0);
      dot += res.eigenvectors[n][i] * v;
      uu += res.eigenvectors[n][i] * res.eigenvectors[n][i];
      pp += v * v;
    }
    const double overlap = std::abs(dot) / std::sqrt(uu * pp);
    r.below("one_minus_overlap", 1.0 - overlap, tol.oracle_overlap);

    if (res.spacings.size() >= 3) {
      std::vector<double> errors;
      for (const auto& level : res.level_eigenvalues) errors.push_back(std::abs(level[n] - exact));
      const double order = observed_order(res.spacings, errors);
      r.info("convergence_order", order);
      r.below("order_deviation", std::abs(order - 2.0), tol.order_band);
    }
    r.info("box_lo", res.bounds.lo).info("box_hi", res.bounds.hi).info("finest_points", res.points.back());
    out.push_back(std::move(r));
  }
  if (res.count_below_threshold) {
    VerificationReport r;
    r.relation_id = "oracle.bound_state_count";
    r.model = id;
    r.params = p;
    const int expected = bound_state_count(id, p).value_or(0);
    r.n = 0;
    r.n_max = expected - 1;
    r.info("finite_difference_count", *res.count_below_threshold);
    r.info("closed_form_count", expected);
    r.below("count_mismatch", std::abs(*res.count_below_threshold - expected), 0.5);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace intertwine

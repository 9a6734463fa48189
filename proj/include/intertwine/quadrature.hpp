#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace intertwine {

/// Nodes and weights of a 1D quadrature rule.
struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    return s;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

/// Composite Gauss-Legendre on [a, b] with equal panels.
inline QuadratureRule composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel) {
  const QuadratureRule base = gauss_legendre(nodes_per_panel);
  QuadratureRule rule;
  rule.x.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  rule.w.reserve(rule.x.capacity());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < nodes_per_panel; ++i) {
      rule.x.push_back(lo + 0.5 * h * (base.x[i] + 1.0));
      rule.w.push_back(0.5 * h * base.w[i]);
    }
  }
  return rule;
}

}  // namespace intertwine

namespace intertwine {

/// Doubles the panel count of a composite Gauss-Legendre rule on [a, b] until
/// the integral of f changes by less than tol relative to sum w |f|.  Returns
/// the converged rule so that related integrands can reuse the same nodes.
template <class F>
QuadratureRule converged_rule(F&& f, double a, double b, double tol, int start_panels = 16,
                              int nodes_per_panel = 20, int max_panels = 8192) {
  auto eval = [&](const QuadratureRule& rule, double& magnitude) {
    double s = 0.0;
    magnitude = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = f(rule.x[i]);
      s += rule.w[i] * v;
      magnitude += rule.w[i] * std::abs(v);
    }
    return s;
  };
  int panels = start_panels;
  QuadratureRule rule = composite_gauss_legendre(a, b, panels, nodes_per_panel);
  double mag = 0.0;
  double prev = eval(rule, mag);
  while (panels < max_panels) {
    panels *= 2;
    QuadratureRule finer = composite_gauss_legendre(a, b, panels, nodes_per_panel);
    double mag_f = 0.0;
    const double cur = eval(finer, mag_f);
    if (std::abs(cur - prev) <= tol * mag_f) return finer;
    rule = std::move(finer);
    prev = cur;
  }
  throw std::runtime_error("converged_rule: quadrature did not converge");
}

}  // namespace intertwine

#pragma once

// Hermite, associated Laguerre and Jacobi polynomials by forward three-term
// recurrence in complex double precision.  Parameters may be complex; for the
// Jacobi family this covers conjugate-pair parameters evaluated at imaginary
// arguments as well as negative real parameters evaluated outside [-1, 1].

#include <cmath>
#include <complex>
#include <vector>

#include "error.hpp"
#include "jet.hpp"

namespace intertwine::specfun {

using cplx = std::complex<double>;

enum class PolyKind { Hermite, LaguerreAssoc, JacobiGeneral };

/// Hermite uses no parameters, Laguerre uses alpha, Jacobi uses (alpha, beta).
struct PolyFamily {
  PolyKind kind = PolyKind::Hermite;
  int degree = 0;
  cplx alpha{};
  cplx beta{};

  static PolyFamily hermite(int n) { return {PolyKind::Hermite, n, {}, {}}; }
  static PolyFamily laguerre(int n, cplx alpha) { return {PolyKind::LaguerreAssoc, n, alpha, {}}; }
  static PolyFamily jacobi(int n, cplx alpha, cplx beta) { return {PolyKind::JacobiGeneral, n, alpha, beta}; }
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

namespace detail {

inline cplx hermite(int n, cplx z) {
  cplx p0 = 1.0;
  if (n == 0) return p0;
  cplx p1 = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const cplx p2 = 2.0 * z * p1 - 2.0 * double(k) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline cplx laguerre(int n, cplx a, cplx z) {
  cplx p0 = 1.0;
  if (n == 0) return p0;
  cplx p1 = 1.0 + a - z;
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1+a-z) L_k - (k+a) L_{k-1}
    const cplx p2 = ((2.0 * k + 1.0 + a - z) * p1 - (double(k) + a) * p0) / double(k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// sum_k C(n+a, n-k) C(n+b, k) ((z-1)/2)^k ((z+1)/2)^(n-k); used where the
// recurrence's leading coefficient vanishes (a + b a negative integer).
inline cplx jacobi_explicit(int n, cplx a, cplx b, cplx z) {
  auto binomial = [](cplx top, int k) {
    cplx r = 1.0;
    for (int j = 1; j <= k; ++j) r *= (top - double(k - j)) / double(j);
    return r;
  };
  cplx s = 0.0;
  for (int k = 0; k <= n; ++k) {
    s += binomial(double(n) + a, n - k) * binomial(double(n) + b, k) * std::pow(0.5 * (z - 1.0), k) *
         std::pow(0.5 * (z + 1.0), n - k);
  }
  return s;
}

inline cplx jacobi(int n, cplx a, cplx b, cplx z) {
  cplx p0 = 1.0;
  if (n == 0) return p0;
  const cplx ab = a + b;
  for (int k = 2; k <= n; ++k) {
    if (std::abs(double(k) + ab) == 0.0 || std::abs(2.0 * double(k) + ab - 2.0) == 0.0) {
      return jacobi_explicit(n, a, b, z);
    }
  }
  cplx p1 = 0.5 * ((ab + 2.0) * z + (a - b));
  for (int k = 2; k <= n; ++k) {
    const cplx s = 2.0 * double(k) + ab;  // 2k + a + b
    const cplx c1 = 2.0 * double(k) * (double(k) + ab) * (s - 2.0);
    const cplx c2 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b);
    const cplx c3 = 2.0 * (double(k) + a - 1.0) * (double(k) + b - 1.0) * s;
    const cplx p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace detail

/// P(z) by forward recurrence.  A non-finite result signals overflow; test
/// with is_finite().
inline cplx eval_poly(const PolyFamily& fam, cplx z) {
  if (fam.degree < 0) throw Error(ErrorKind::InvalidLevel, "polynomial degree must be non-negative");
  switch (fam.kind) {
    case PolyKind::Hermite: return detail::hermite(fam.degree, z);
    case PolyKind::LaguerreAssoc: return detail::laguerre(fam.degree, fam.alpha, z);
    case PolyKind::JacobiGeneral: return detail::jacobi(fam.degree, fam.alpha, fam.beta, z);
  }
  return {};
}

/// d^order P / dz^order via the degree-lowering shift rules
///   H_n' = 2n H_{n-1},  (L_n^a)' = -L_{n-1}^{a+1},
///   (P_n^{(a,b)})' = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)},
/// iterated.  Any order >= 0 is accepted; orders above the degree give 0.
inline cplx eval_poly_deriv(const PolyFamily& fam, cplx z, int order) {
  if (order < 0) throw Error(ErrorKind::InvalidLevel, "derivative order must be non-negative");
  if (order == 0) return eval_poly(fam, z);
  const int n = fam.degree;
  if (order > n) return 0.0;
  PolyFamily lowered = fam;
  lowered.degree = n - order;
  cplx factor = 1.0;
  switch (fam.kind) {
    case PolyKind::Hermite:
      for (int j = 0; j < order; ++j) factor *= 2.0 * double(n - j);
      break;
    case PolyKind::LaguerreAssoc:
      factor = (order % 2 == 0) ? 1.0 : -1.0;
      lowered.alpha = fam.alpha + double(order);
      break;
    case PolyKind::JacobiGeneral:
      for (int j = 1; j <= order; ++j) factor *= 0.5 * (double(n + j) + fam.alpha + fam.beta);
      lowered.alpha = fam.alpha + double(order);
      lowered.beta = fam.beta + double(order);
      break;
  }
  return factor * eval_poly(lowered, z);
}

/// P composed with an argument jet z(x): chain rule through eval_poly_deriv.
inline ComplexJet eval_poly_jet(const PolyFamily& fam, const ComplexJet& z) {
  std::vector<cplx> derivs(z.order() + 1);
  for (int j = 0; j <= z.order(); ++j) derivs[j] = eval_poly_deriv(fam, z.value(), j);
  return compose<cplx>(derivs, z);
}

/// v^n P_n^{(a,b)}(u / v) from the recurrence multiplied through by powers
/// of v.  Stays regular where v vanishes, unlike composing with u / v.
inline ComplexJet jacobi_homogeneous_jet(int n, cplx a, cplx b, const ComplexJet& u, const ComplexJet& v) {
  if (n < 0) throw Error(ErrorKind::InvalidLevel, "polynomial degree must be non-negative");
  ComplexJet p0 = ComplexJet::constant(1.0, u.order());
  if (n == 0) return p0;
  const cplx ab = a + b;
  ComplexJet p1 = 0.5 * ((ab + 2.0) * u + (a - b) * v);
  const ComplexJet v2 = v * v;
  for (int k = 2; k <= n; ++k) {
    const cplx s = 2.0 * double(k) + ab;
    const cplx c1 = 2.0 * double(k) * (double(k) + ab) * (s - 2.0);
    const ComplexJet c2 = (s - 1.0) * (s * (s - 2.0) * u + (a * a - b * b) * v);
    const cplx c3 = 2.0 * (double(k) + a - 1.0) * (double(k) + b - 1.0) * s;
    ComplexJet p2 = (c2 * p1 - c3 * v2 * p0) / c1;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return p1;
}

}  // namespace intertwine::specfun

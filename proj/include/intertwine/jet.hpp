#pragma once

// Truncated Taylor series ("jets") in one variable.
//
// A Jet<T> of order p stores c[0..p] with f(x0 + t) = sum_k c[k] t^k + O(t^(p+1)),
// so c[k] = f^(k)(x0) / k!.  Arithmetic and the elementary functions below
// propagate all coefficients exactly (up to rounding), which is how every
// derivative in this library is obtained: no finite differences anywhere.

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <span>
#include <type_traits>

namespace intertwine {

inline constexpr int kMaxJetOrder = 15;

namespace detail {

template <class T>
struct is_complex : std::false_type {};
template <class R>
struct is_complex<std::complex<R>> : std::true_type {};

inline constexpr double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace detail

template <class T>
class Jet {
 public:
  using value_type = T;

  Jet() = default;
  explicit Jet(int order) : order_(order) { assert(order >= 0 && order <= kMaxJetOrder); }

  static Jet constant(T value, int order) {
    Jet j(order);
    j.c_[0] = value;
    return j;
  }

  /// The independent variable expanded around x0.
  static Jet variable(T x0, int order) {
    Jet j(order);
    j.c_[0] = x0;
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  int order() const { return order_; }
  T& operator[](int k) { return c_[k]; }
  const T& operator[](int k) const { return c_[k]; }
  std::span<const T> coefficients() const { return {c_.data(), static_cast<std::size_t>(order_ + 1)}; }

  T value() const { return c_[0]; }
  /// k-th derivative at the expansion point.
  T derivative(int k) const { return c_[k] * T(detail::factorial(k)); }

  /// Jet of f' (one order lower).
  Jet differentiated() const {
    assert(order_ >= 1);
    Jet d(order_ - 1);
    for (int k = 0; k <= d.order_; ++k) d.c_[k] = c_[k + 1] * T(k + 1);
    return d;
  }

  Jet truncated(int order) const {
    assert(order <= order_);
    Jet t(order);
    std::copy_n(c_.begin(), order + 1, t.c_.begin());
    return t;
  }

  /// Chain rule for x -> alpha x: coefficients scale by alpha^k.
  Jet scaled(double alpha) const {
    Jet s = *this;
    double a = 1.0;
    for (int k = 0; k <= order_; ++k) {
      s.c_[k] *= a;
      a *= alpha;
    }
    return s;
  }

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator*=(T s) {
    for (int k = 0; k <= order_; ++k) c_[k] *= s;
    return *this;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }
  friend Jet operator-(const Jet& a) {
    Jet r(a.order_);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = -a.c_[k];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
      T s{};
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
      T s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }
  friend Jet operator+(const Jet& a, T s) {
    Jet r = a;
    r.c_[0] += s;
    return r;
  }
  friend Jet operator+(T s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, T s) { return a + (-s); }
  friend Jet operator-(T s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(const Jet& a, T s) {
    Jet r = a;
    r *= s;
    return r;
  }
  friend Jet operator*(T s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, T s) { return a * (T(1) / s); }
  friend Jet operator/(T s, const Jet& a) { return Jet::constant(s, a.order_) / a; }

 private:
  std::array<T, kMaxJetOrder + 1> c_{};
  int order_ = 0;
};

using RealJet = Jet<double>;
using ComplexJet = Jet<std::complex<double>>;

inline ComplexJet to_complex(const RealJet& a) {
  ComplexJet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k];
  return r;
}

inline RealJet real_part(const ComplexJet& a) {
  RealJet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k].real();
  return r;
}

inline RealJet imag_part(const ComplexJet& a) {
  RealJet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k].imag();
  return r;
}

template <class T>
Jet<T> exp(const Jet<T>& a) {
  using std::exp;
  Jet<T> r(a.order());
  r[0] = exp(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    T s{};
    for (int j = 1; j <= k; ++j) s += T(j) * a[j] * r[k - j];
    r[k] = s / T(k);
  }
  return r;
}

template <class T>
Jet<T> log(const Jet<T>& a) {
  using std::log;
  Jet<T> r(a.order());
  r[0] = log(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    T s = a[k];
    for (int j = 1; j < k; ++j) s -= T(j) * r[j] * a[k - j] / T(k);
    r[k] = s / a[0];
  }
  return r;
}

namespace detail {

// Shared recurrence for (sin, cos) and (sinh, cosh): s' = a' c, c' = sign * a' s.
template <class T>
void trig_pair(const Jet<T>& a, Jet<T>& s, Jet<T>& c, double sign, T s0, T c0) {
  s = Jet<T>(a.order());
  c = Jet<T>(a.order());
  s[0] = s0;
  c[0] = c0;
  for (int k = 1; k <= a.order(); ++k) {
    T ss{}, cc{};
    for (int j = 1; j <= k; ++j) {
      ss += T(j) * a[j] * c[k - j];
      cc += T(j) * a[j] * s[k - j];
    }
    s[k] = ss / T(k);
    c[k] = T(sign) * cc / T(k);
  }
}

}  // namespace detail

template <class T>
Jet<T> sin(const Jet<T>& a) {
  using std::cos, std::sin;
  Jet<T> s, c;
  detail::trig_pair(a, s, c, -1.0, sin(a[0]), cos(a[0]));
  return s;
}

template <class T>
Jet<T> cos(const Jet<T>& a) {
  using std::cos, std::sin;
  Jet<T> s, c;
  detail::trig_pair(a, s, c, -1.0, sin(a[0]), cos(a[0]));
  return c;
}

template <class T>
Jet<T> sinh(const Jet<T>& a) {
  using std::cosh, std::sinh;
  Jet<T> s, c;
  detail::trig_pair(a, s, c, 1.0, sinh(a[0]), cosh(a[0]));
  return s;
}

template <class T>
Jet<T> cosh(const Jet<T>& a) {
  using std::cosh, std::sinh;
  Jet<T> s, c;
  detail::trig_pair(a, s, c, 1.0, sinh(a[0]), cosh(a[0]));
  return c;
}

/// a^p for real p; requires a[0] != 0 (and a[0] > 0 for non-integer p on reals).
template <class T>
Jet<T> pow(const Jet<T>& a, double p) {
  using std::pow;
  Jet<T> r(a.order());
  r[0] = pow(a[0], p);
  for (int k = 1; k <= a.order(); ++k) {
    T s{};
    for (int j = 1; j <= k; ++j) s += (T(p * j) - T(k - j)) * a[j] * r[k - j];
    r[k] = s / (T(k) * a[0]);
  }
  return r;
}

/// a^n by repeated multiplication; valid where a[0] == 0 as well.
template <class T>
Jet<T> ipow(const Jet<T>& a, int n) {
  assert(n >= 0);
  Jet<T> r = Jet<T>::constant(T(1), a.order());
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

/// Composes an outer function g, given by its derivatives g^(j)(u0) for
/// j = 0..u.order(), with an inner jet u whose value is u0.
template <class T>
Jet<T> compose(std::span<const T> outer_derivatives, const Jet<T>& u) {
  assert(static_cast<int>(outer_derivatives.size()) >= u.order() + 1);
  Jet<T> du = u;
  du[0] = T{};
  Jet<T> power = Jet<T>::constant(T(1), u.order());
  Jet<T> r(u.order());
  for (int j = 0; j <= u.order(); ++j) {
    const T coeff = outer_derivatives[j] / T(detail::factorial(j));
    for (int k = j; k <= u.order(); ++k) r[k] += coeff * power[k];
    power = power * du;
  }
  return r;
}

}  // namespace intertwine

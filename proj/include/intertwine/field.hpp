#pragma once

// Fields are real functions of one variable that can be evaluated together with
// their derivatives (as jets); operators map fields to fields.  Operators carry
// their differential order so that a composition which would need more
// derivatives than a field declares fails loudly instead of degrading.

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "jet.hpp"

namespace intertwine {

class Field {
 public:
  using Fn = std::function<RealJet(double x, int order)>;

  Field() : Field([](double, int order) { return RealJet(order); }) {}
  explicit Field(Fn fn, int max_order = kMaxJetOrder) : fn_(std::move(fn)), max_order_(max_order) {}

  /// Jet of the field at x, valid to the requested derivative order.
  RealJet operator()(double x, int order) const {
    if (order > max_order_) {
      throw Error(ErrorKind::InsufficientDerivativeOrder,
                  "requested derivative order " + std::to_string(order) + " but field provides " +
                      std::to_string(max_order_));
    }
    return fn_(x, order);
  }

  double value(double x) const { return (*this)(x, 0).value(); }
  int max_order() const { return max_order_; }

  /// Same function, but declaring fewer available derivatives.
  Field limited_to(int order) const { return Field(fn_, std::min(order, max_order_)); }

  static Field constant(double c) {
    return Field([c](double, int order) { return RealJet::constant(c, order); });
  }
  static Field coordinate() {
    return Field([](double x, int order) { return RealJet::variable(x, order); });
  }

  /// Lifts an elementary jet map (sin, cosh, ...) to a field of the coordinate.
  template <class F>
  static Field of_coordinate(F f) {
    return Field([f](double x, int order) { return f(RealJet::variable(x, order)); });
  }

  friend Field operator+(const Field& a, const Field& b) {
    return Field([a, b](double x, int order) { return a(x, order) + b(x, order); },
                 std::min(a.max_order_, b.max_order_));
  }
  friend Field operator-(const Field& a, const Field& b) {
    return Field([a, b](double x, int order) { return a(x, order) - b(x, order); },
                 std::min(a.max_order_, b.max_order_));
  }
  friend Field operator*(const Field& a, const Field& b) {
    return Field([a, b](double x, int order) { return a(x, order) * b(x, order); },
                 std::min(a.max_order_, b.max_order_));
  }
  friend Field operator*(double s, const Field& a) {
    return Field([s, a](double x, int order) { return s * a(x, order); }, a.max_order_);
  }

 private:
  Fn fn_;
  int max_order_;
};

/// Linear combination sum_i c_i f_i.
inline Field linear_combination(std::vector<double> coeffs, std::vector<Field> fields) {
  int max_order = kMaxJetOrder;
  for (const auto& f : fields) max_order = std::min(max_order, f.max_order());
  auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<Field>>>(std::move(coeffs),
                                                                                         std::move(fields));
  return Field(
      [data](double x, int order) {
        RealJet r(order);
        for (std::size_t i = 0; i < data->first.size(); ++i) r += data->first[i] * data->second[i](x, order);
        return r;
      },
      max_order);
}

/// A linear map between fields with a known differential order.
class Operator {
 public:
  using Fn = std::function<Field(const Field&)>;

  Operator(Fn fn, int differential_order, std::string label)
      : fn_(std::move(fn)), order_(differential_order), label_(std::move(label)) {}

  Field operator()(const Field& f) const {
    if (f.max_order() < order_) {
      throw Error(ErrorKind::InsufficientDerivativeOrder,
                  label_ + " needs " + std::to_string(order_) + " derivatives, field provides " +
                      std::to_string(f.max_order()));
    }
    return fn_(f);
  }

  int order() const { return order_; }
  const std::string& label() const { return label_; }

  static Operator identity() {
    return Operator([](const Field& f) { return f; }, 0, "1");
  }
  static Operator scalar(double c) {
    return Operator([c](const Field& f) { return c * f; }, 0, std::to_string(c));
  }
  static Operator multiply(Field q, std::string label) {
    return Operator([q](const Field& f) { return q * f; }, 0, std::move(label));
  }

  /// Composition: (a * b)(f) = a(b(f)).
  friend Operator operator*(const Operator& a, const Operator& b) {
    return Operator([a, b](const Field& f) { return a(b(f)); }, a.order_ + b.order_,
                    "(" + a.label_ + ")(" + b.label_ + ")");
  }
  friend Operator operator+(const Operator& a, const Operator& b) {
    return Operator([a, b](const Field& f) { return a(f) + b(f); }, std::max(a.order_, b.order_),
                    a.label_ + " + " + b.label_);
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    return Operator([a, b](const Field& f) { return a(f) - b(f); }, std::max(a.order_, b.order_),
                    a.label_ + " - " + b.label_);
  }
  friend Operator operator*(double s, const Operator& a) {
    return Operator([s, a](const Field& f) { return s * a(f); }, a.order_, std::to_string(s) + "*" + a.label_);
  }
  friend Operator operator+(const Operator& a, double c) { return a + Operator::scalar(c); }
  friend Operator operator-(const Operator& a, double c) { return a - Operator::scalar(c); }

 private:
  Fn fn_;
  int order_;
  std::string label_;
};

inline Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

/// sum_k c_k(x) d^k/dx^k with coefficient fields c_0..c_K.
inline Operator differential_operator(std::vector<Field> coeffs, std::string label) {
  const int K = static_cast<int>(coeffs.size()) - 1;
  auto c = std::make_shared<const std::vector<Field>>(std::move(coeffs));
  return Operator(
      [c, K](const Field& f) {
        return Field(
            [c, K, f](double x, int order) {
              RealJet d = f(x, order + K);
              RealJet r(order);
              for (int k = 0; k <= K; ++k) {
                r += (*c)[k](x, order) * d.truncated(order);
                if (k < K) d = d.differentiated();
              }
              return r;
            },
            f.max_order() - K);
      },
      K, std::move(label));
}

/// (S(alpha) f)(x) = f(alpha x), the exponential of (ln alpha) x d/dx.
struct ScalingOp {
  double alpha = 1.0;

  Field apply(const Field& f) const {
    const double a = alpha;
    return Field([a, f](double x, int order) { return f(a * x, order).scaled(a); }, f.max_order());
  }

  Operator op() const {
    const ScalingOp self = *this;
    return Operator([self](const Field& f) { return self.apply(f); }, 0, "S(" + std::to_string(alpha) + ")");
  }
};

}  // namespace intertwine

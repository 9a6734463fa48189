#pragma once

// The five exactly solvable systems: parameters, domains, Hamiltonians,
// closed-form eigenpairs and the level-dependent parameter flows.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "jet.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace intertwine {

enum class ModelId {
  HarmonicOscillator,
  CalogeroSutherland,
  HydrogenRadial,
  RosenMorseSpherical,
  RosenMorseHyperbolic,
};

inline constexpr ModelId kAllModels[] = {ModelId::HarmonicOscillator, ModelId::CalogeroSutherland,
                                         ModelId::HydrogenRadial, ModelId::RosenMorseSpherical,
                                         ModelId::RosenMorseHyperbolic};

/// Short names used on the command line and in reports.
constexpr std::string_view model_name(ModelId id) {
  switch (id) {
    case ModelId::HarmonicOscillator: return "ho";
    case ModelId::CalogeroSutherland: return "cs";
    case ModelId::HydrogenRadial: return "hydrogen";
    case ModelId::RosenMorseSpherical: return "rm-sph";
    case ModelId::RosenMorseHyperbolic: return "rm-hyp";
  }
  return "";
}

inline std::optional<ModelId> parse_model(std::string_view name) {
  for (ModelId id : kAllModels)
    if (model_name(id) == name) return id;
  return std::nullopt;
}

/// Models whose Dn maps levels between two couplings.
constexpr bool has_parameter_flow(ModelId id) {
  return id == ModelId::HydrogenRadial || id == ModelId::RosenMorseSpherical ||
         id == ModelId::RosenMorseHyperbolic;
}

/// Superset of all model parameters; each model reads only its own fields.
struct ParameterSet {
  double m = 1.0;      // mass (HO, hydrogen)
  double g = 1.0;      // coupling (hydrogen, Rosen-Morse, Calogero-Sutherland)
  double l = 0.0;      // centrifugal parameter (hydrogen, Rosen-Morse)
  double omega = 1.0;  // frequency (HO)

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

/// Names of the fields a model actually uses, in report order.
inline std::vector<std::string_view> parameter_names(ModelId id) {
  switch (id) {
    case ModelId::HarmonicOscillator: return {"m", "omega"};
    case ModelId::CalogeroSutherland: return {"g"};
    case ModelId::HydrogenRadial: return {"m", "g", "l"};
    case ModelId::RosenMorseSpherical:
    case ModelId::RosenMorseHyperbolic: return {"g", "l"};
  }
  return {};
}

inline double parameter_value(const ParameterSet& p, std::string_view name) {
  if (name == "m") return p.m;
  if (name == "g") return p.g;
  if (name == "l") return p.l;
  return p.omega;
}

inline void validate(ModelId id, const ParameterSet& p) {
  auto fail = [id](const std::string& why) {
    throw Error(ErrorKind::InvalidParameters, std::string(model_name(id)) + ": " + why);
  };
  switch (id) {
    case ModelId::HarmonicOscillator:
      if (!(p.m > 0)) fail("m must be positive");
      if (!(p.omega > 0)) fail("omega must be positive");
      break;
    case ModelId::CalogeroSutherland:
      if (!(p.g > 0)) fail("g must be positive");
      break;
    case ModelId::HydrogenRadial:
      if (!(p.m > 0)) fail("m must be positive");
      if (!(p.g > 0)) fail("g must be positive");
      if (!(p.l >= 0) || p.l != std::floor(p.l)) fail("l must be a non-negative integer");
      break;
    case ModelId::RosenMorseSpherical:
      if (!(p.l >= 0)) fail("l must be non-negative");
      if (!(p.g >= 0)) fail("g must be non-negative");
      break;
    case ModelId::RosenMorseHyperbolic:
      if (!(p.l >= 0)) fail("l must be non-negative");
      if (!(p.g >= (p.l + 1) * (p.l + 1))) fail("g must be at least (l+1)^2");
      break;
  }
}

/// Five representative parameter sets per model; the first three form the
/// oracle matrix.
inline std::vector<ParameterSet> default_parameter_sets(ModelId id) {
  switch (id) {
    case ModelId::HarmonicOscillator:
      return {{.m = 1, .omega = 1}, {.m = 0.5, .omega = 2}, {.m = 2, .omega = 0.5},
              {.m = 1.5, .omega = 1.3}, {.m = 0.7, .omega = 0.8}};
    case ModelId::CalogeroSutherland:
      return {{.g = 2}, {.g = 1.5}, {.g = 3}, {.g = 1}, {.g = 2.5}};
    case ModelId::HydrogenRadial:
      return {{.m = 1, .g = 1, .l = 0}, {.m = 1, .g = 1, .l = 1}, {.m = 0.5, .g = 2, .l = 0},
              {.m = 2, .g = 0.5, .l = 2}, {.m = 1, .g = 1.5, .l = 3}};
    case ModelId::RosenMorseSpherical:
      return {{.g = 2, .l = 0}, {.g = 1, .l = 1}, {.g = 0.5, .l = 2}, {.g = 3, .l = 0.5}, {.g = 4, .l = 1.5}};
    case ModelId::RosenMorseHyperbolic:
      return {{.g = 9, .l = 0}, {.g = 25, .l = 0}, {.g = 30, .l = 1}, {.g = 50, .l = 0.5}, {.g = 169, .l = 0}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Domains

/// Open interval of the model with its inner-product weight.  Infinite ends
/// are truncated per state (see support()).
struct DomainSpec {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_infinite = false;
  bool hi_infinite = false;
  bool lo_singular = false;  // potential diverges at lo
  bool hi_singular = false;
  bool radial_weight = false;  // w(r) = r^2, otherwise w = 1

  double weight(double x) const { return radial_weight ? x * x : 1.0; }
};

inline DomainSpec domain(ModelId id) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (id) {
    case ModelId::HarmonicOscillator: return {-inf, inf, true, true, false, false, false};
    case ModelId::CalogeroSutherland: return {0.0, std::numbers::pi, false, false, true, true, false};
    case ModelId::HydrogenRadial: return {0.0, inf, false, true, true, false, true};
    case ModelId::RosenMorseSpherical: return {0.0, std::numbers::pi, false, false, true, true, false};
    case ModelId::RosenMorseHyperbolic: return {0.0, inf, false, true, true, false, false};
  }
  return {};
}

/// A finite interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// ---------------------------------------------------------------------------
// Spectrum

/// Energy formula without spectrum checks (also used off the bound sector by
/// the arithmetic energy identities).
inline double energy_formula(ModelId id, const ParameterSet& p, int n) {
  switch (id) {
    case ModelId::HarmonicOscillator: return (n + 0.5) * p.omega;
    case ModelId::CalogeroSutherland: return 0.5 * (n + p.g) * (n + p.g);
    case ModelId::HydrogenRadial: {
      const double N = n + p.l + 1;
      return -p.g * p.g / (2.0 * p.m * N * N);
    }
    case ModelId::RosenMorseSpherical: {
      const double N = n + p.l + 1;
      return N * N - (p.g / N) * (p.g / N);
    }
    case ModelId::RosenMorseHyperbolic: {
      const double N = n + p.l + 1;
      return -N * N - (p.g / N) * (p.g / N);
    }
  }
  return 0.0;
}

/// Number of bound states; nullopt when the discrete spectrum is infinite.
inline std::optional<int> bound_state_count(ModelId id, const ParameterSet& p) {
  if (id != ModelId::RosenMorseHyperbolic) return std::nullopt;
  // count of integers n >= 0 with n < sqrt(g) - l - 1
  const double s = std::sqrt(p.g) - p.l - 1.0;
  if (s <= 0) return 0;
  return static_cast<int>(std::ceil(s));
}

inline bool in_spectrum(ModelId id, const ParameterSet& p, int n) {
  if (n < 0) return false;
  const auto count = bound_state_count(id, p);
  return !count || n < *count;
}

inline double eigenvalue(ModelId id, const ParameterSet& p, int n) {
  validate(id, p);
  if (!in_spectrum(id, p, n)) {
    throw Error(ErrorKind::IndexOutOfSpectrum,
                std::string(model_name(id)) + ": level " + std::to_string(n) + " is not a bound state");
  }
  return energy_formula(id, p, n);
}

// ---------------------------------------------------------------------------
// Hamiltonians

namespace detail {

/// Wraps a coefficient field so that evaluation outside the open domain (or on
/// a singular endpoint) is rejected.
inline Field guarded(Field f, ModelId id) {
  const DomainSpec d = domain(id);
  return Field(
      [f, d, id](double x, int order) {
        const bool bad_lo = d.lo_singular ? x <= d.lo : (!d.lo_infinite && x < d.lo);
        const bool bad_hi = d.hi_singular ? x >= d.hi : (!d.hi_infinite && x > d.hi);
        if (bad_lo || bad_hi) {
          throw Error(ErrorKind::EvaluationAtSingularity,
                      std::string(model_name(id)) + ": potential is singular at x=" + std::to_string(x));
        }
        return f(x, order);
      },
      f.max_order());
}

// Hyperbolic functions written through exp(-2x) away from the origin so that
// nothing overflows far out on the half line.
inline RealJet log_sinh(const RealJet& x) {
  if (x.value() < 1.0) return log(sinh(x));
  return x - std::numbers::ln2 + log(1.0 - exp(-2.0 * x));
}
inline RealJet coth(const RealJet& x) {
  if (x.value() < 1.0) return cosh(x) / sinh(x);
  const RealJet e = exp(-2.0 * x);
  return (1.0 + e) / (1.0 - e);
}
inline RealJet csch2(const RealJet& x) {
  if (x.value() < 1.0) {
    const RealJet s = sinh(x);
    return 1.0 / (s * s);
  }
  const RealJet e = exp(-2.0 * x);
  const RealJet d = 1.0 - e;
  return 4.0 * e / (d * d);
}

}  // namespace detail

/// The model Hamiltonian as a second-order differential operator.
inline Operator hamiltonian(ModelId id, const ParameterSet& p) {
  validate(id, p);
  const std::string name = "H_" + std::string(model_name(id));
  switch (id) {
    case ModelId::HarmonicOscillator: {
      const double k = 0.5 * p.m * p.omega * p.omega;
      Field c0 = Field::of_coordinate([k](RealJet x) { return k * x * x; });
      return differential_operator({c0, Field::constant(0.0), Field::constant(-0.5 / p.m)}, name);
    }
    case ModelId::CalogeroSutherland: {
      const double k = 0.5 * p.g * (p.g - 1.0);
      Field c0 = Field::of_coordinate([k](RealJet x) {
        const RealJet s = sin(x);
        return k / (s * s);
      });
      return differential_operator({detail::guarded(c0, id), Field::constant(0.0), Field::constant(-0.5)}, name);
    }
    case ModelId::HydrogenRadial: {
      const double m = p.m, g = p.g, ll = p.l * (p.l + 1.0);
      Field c0 = Field::of_coordinate([=](RealJet r) { return (ll / (r * r) - 2.0 * g / r) / (2.0 * m); });
      Field c1 = Field::of_coordinate([=](RealJet r) { return -1.0 / (m * r); });
      return differential_operator(
          {detail::guarded(c0, id), detail::guarded(c1, id), Field::constant(-0.5 / m)}, name);
    }
    case ModelId::RosenMorseSpherical: {
      const double g = p.g, ll = p.l * (p.l + 1.0);
      Field c0 = Field::of_coordinate([=](RealJet x) {
        const RealJet s = sin(x);
        return ll / (s * s) - 2.0 * g * cos(x) / s;
      });
      return differential_operator({detail::guarded(c0, id), Field::constant(0.0), Field::constant(-1.0)}, name);
    }
    case ModelId::RosenMorseHyperbolic: {
      const double g = p.g, ll = p.l * (p.l + 1.0);
      Field c0 = Field::of_coordinate([=](RealJet x) { return ll * detail::csch2(x) - 2.0 * g * detail::coth(x); });
      return differential_operator({detail::guarded(c0, id), Field::constant(0.0), Field::constant(-1.0)}, name);
    }
  }
  throw Error(ErrorKind::UnsupportedModel, "unknown model");
}

inline Field apply_hamiltonian(ModelId id, const ParameterSet& p, const Field& f) { return hamiltonian(id, p)(f); }

/// Hamiltonian written as -kappa u'' + V(x) u.  For hydrogen this is the
/// equation for u = r psi, so closed forms must be multiplied by r to compare.
struct ReducedProblem {
  double kappa = 1.0;
  std::function<double(double)> potential;
  bool multiply_by_coordinate = false;
};

inline ReducedProblem reduced_problem(ModelId id, const ParameterSet& p) {
  validate(id, p);
  switch (id) {
    case ModelId::HarmonicOscillator: {
      const double k = 0.5 * p.m * p.omega * p.omega;
      return {0.5 / p.m, [k](double x) { return k * x * x; }, false};
    }
    case ModelId::CalogeroSutherland: {
      const double k = 0.5 * p.g * (p.g - 1.0);
      return {0.5, [k](double x) { return k / (std::sin(x) * std::sin(x)); }, false};
    }
    case ModelId::HydrogenRadial: {
      const double m = p.m, g = p.g, ll = p.l * (p.l + 1.0);
      return {0.5 / m, [=](double r) { return ll / (2.0 * m * r * r) - g / (m * r); }, true};
    }
    case ModelId::RosenMorseSpherical: {
      const double g = p.g, ll = p.l * (p.l + 1.0);
      return {1.0, [=](double x) { return ll / (std::sin(x) * std::sin(x)) - 2.0 * g / std::tan(x); }, false};
    }
    case ModelId::RosenMorseHyperbolic: {
      const double g = p.g, ll = p.l * (p.l + 1.0);
      return {1.0, [=](double x) { return ll / (std::sinh(x) * std::sinh(x)) - 2.0 * g / std::tanh(x); }, false};
    }
  }
  throw Error(ErrorKind::UnsupportedModel, "unknown model");
}

/// Limit of the potential at the open end, where the continuum starts.
inline std::optional<double> continuum_threshold(ModelId id, const ParameterSet& p) {
  if (id == ModelId::RosenMorseHyperbolic) return -2.0 * p.g;
  if (id == ModelId::HydrogenRadial) return 0.0;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closed-form eigenfunctions

namespace detail {

using cplx = std::complex<double>;

/// Unnormalized closed form as a complex jet.
inline ComplexJet raw_eigenfunction(ModelId id, const ParameterSet& p, int n, double x, int order) {
  using specfun::PolyFamily;
  const RealJet X = RealJet::variable(x, order);
  switch (id) {
    case ModelId::HarmonicOscillator: {
      const double mw = p.m * p.omega;
      const RealJet pre = exp(-0.5 * mw * X * X);
      const ComplexJet xi = to_complex(std::sqrt(mw) * X);
      return to_complex(pre) * specfun::eval_poly_jet(PolyFamily::hermite(n), xi);
    }
    case ModelId::CalogeroSutherland: {
      const RealJet pre = pow(sin(X), p.g);
      const double a = p.g - 0.5;
      return to_complex(pre) * specfun::eval_poly_jet(PolyFamily::jacobi(n, a, a), to_complex(cos(X)));
    }
    case ModelId::HydrogenRadial: {
      const double N = n + p.l + 1.0;
      const RealJet pre = ipow(X, static_cast<int>(p.l)) * exp(-(p.g / N) * X);
      const ComplexJet xi = to_complex((2.0 * p.g / N) * X);
      return to_complex(pre) * specfun::eval_poly_jet(PolyFamily::laguerre(n, 2.0 * p.l + 1.0), xi);
    }
    case ModelId::RosenMorseSpherical: {
      const double N = n + p.l + 1.0;
      const RealJet s = sin(X);
      const RealJet pre = pow(s, N) * exp(-(p.g / N) * X);
      const cplx ap(-N, p.g / N), am(-N, -p.g / N);
      const ComplexJet xi = cplx(0.0, 1.0) * to_complex(cos(X) / s);
      return to_complex(pre) * specfun::eval_poly_jet(PolyFamily::jacobi(n, ap, am), xi);
    }
    case ModelId::RosenMorseHyperbolic: {
      const double N = n + p.l + 1.0;
      const double bp = -N + p.g / N, bm = -N - p.g / N;
      if (x < 1.0) {
        // sinh^(l+1) * [sinh^n P_n(coth)] keeps every factor regular at the origin.
        const RealJet s = sinh(X);
        const RealJet pre = pow(s, p.l + 1.0) * exp(-(p.g / N) * X);
        return to_complex(pre) * specfun::jacobi_homogeneous_jet(n, bp, bm, to_complex(cosh(X)), to_complex(s));
      }
      const RealJet pre = exp(N * log_sinh(X) - (p.g / N) * X);
      return to_complex(pre) * specfun::eval_poly_jet(PolyFamily::jacobi(n, bp, bm), to_complex(coth(X)));
    }
  }
  return ComplexJet(order);
}

inline constexpr double kTailRatio = 1e-18;

/// Point beyond x_peak where the log-envelope lp has dropped by `drop`.
template <class F>
double envelope_drop_point(F lp, double x_peak, double drop) {
  const double target = lp(x_peak) - drop;
  double a = x_peak, b = std::max(2.0 * x_peak, 1.0);
  while (lp(b) > target) b *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (a + b);
    (lp(mid) > target ? a : b) = mid;
  }
  return b;
}

/// Upper truncation point where the envelope of level n (power-law growth
/// times the exponential or Gaussian decay) has fallen below kTailRatio of
/// its maximum.
inline double tail_cutoff(ModelId id, const ParameterSet& p, int n) {
  const double drop = -std::log(kTailRatio);
  switch (id) {
    case ModelId::HarmonicOscillator: {
      const double mw = p.m * p.omega;
      if (n == 0) return std::sqrt(2.0 * drop / mw);
      return envelope_drop_point([n, mw](double x) { return n * std::log(x) - 0.5 * mw * x * x; },
                                 std::sqrt(n / mw), drop);
    }
    case ModelId::HydrogenRadial: {
      const double N = n + p.l + 1.0, k = p.g / N;
      return envelope_drop_point([N, k](double r) { return N * std::log(r) - k * r; }, N / k, drop);
    }
    case ModelId::RosenMorseHyperbolic: {
      const double N = n + p.l + 1.0, k = p.g / N;
      auto lp = [N, k](double x) { return N * log_sinh(RealJet::constant(x, 0)).value() - k * x; };
      return envelope_drop_point(lp, std::atanh(std::min(N * N / p.g, 1.0 - 1e-15)), drop);
    }
    default: return domain(id).hi;
  }
}

}  // namespace detail

/// Truncated support of level n: the full interval when bounded.
inline Interval support(ModelId id, const ParameterSet& p, int n) {
  const DomainSpec d = domain(id);
  const double hi = d.hi_infinite ? detail::tail_cutoff(id, p, n) : d.hi;
  const double lo = d.lo_infinite ? -hi : d.lo;
  return {lo, hi};
}

/// Smallest interval containing the supports of levels 0..n_max.
inline Interval support_up_to(ModelId id, const ParameterSet& p, int n_max) {
  Interval s = support(id, p, 0);
  for (int n = 1; n <= n_max; ++n) {
    const Interval t = support(id, p, n);
    s.lo = std::min(s.lo, t.lo);
    s.hi = std::max(s.hi, t.hi);
  }
  return s;
}

/// Normalized, phase-fixed eigenfunction of one model at one level.
/// Immutable after construction; cheap to copy.
class EigenState {
 public:
  ModelId model() const { return model_; }
  const ParameterSet& params() const { return params_; }
  int n() const { return n_; }
  double energy() const { return energy_; }
  double norm_const() const { return norm_const_; }
  /// Unit complex factor applied to the raw closed form (includes the sign).
  std::complex<double> phase() const { return phase_; }
  /// max |Im psi| / max |psi| over the normalization grid after phase fixing.
  double imag_ratio() const { return imag_ratio_; }
  const Interval& support() const { return support_; }

  RealJet operator()(double x, int order) const {
    return norm_const_ * real_part(phase_ * detail::raw_eigenfunction(model_, params_, n_, x, order));
  }
  double value(double x) const { return (*this)(x, 0).value(); }

  Field field() const {
    const EigenState self = *this;
    return Field([self](double x, int order) { return self(x, order); });
  }

  friend EigenState eigenfunction(ModelId id, const ParameterSet& p, int n);

 private:
  ModelId model_ = ModelId::HarmonicOscillator;
  ParameterSet params_;
  int n_ = 0;
  double energy_ = 0.0;
  double norm_const_ = 1.0;
  std::complex<double> phase_{1.0, 0.0};
  double imag_ratio_ = 0.0;
  Interval support_;
};

inline constexpr double kNormalizationTolerance = 1e-13;

inline EigenState eigenfunction(ModelId id, const ParameterSet& p, int n) {
  EigenState s;
  s.model_ = id;
  s.params_ = p;
  s.n_ = n;
  s.energy_ = eigenvalue(id, p, n);
  s.support_ = support(id, p, n);
  const DomainSpec d = domain(id);

  auto raw = [&](double x) { return detail::raw_eigenfunction(id, p, n, x, 0).value(); };

  // Phase: rotate the largest sample onto the real axis, then make the first
  // lobe (leftmost sample above 1e-6 of the peak) positive.
  const QuadratureRule probe = composite_gauss_legendre(s.support_.lo, s.support_.hi, 64, 16);
  std::vector<std::complex<double>> values(probe.size());
  double peak = 0.0;
  std::complex<double> at_peak = 1.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    values[i] = raw(probe.x[i]);
    if (!specfun::is_finite(values[i])) {
      throw Error(ErrorKind::NormalizationFailure, "closed form overflowed at x=" + std::to_string(probe.x[i]));
    }
    if (std::abs(values[i]) > peak) {
      peak = std::abs(values[i]);
      at_peak = values[i];
    }
  }
  if (!(peak > 0)) throw Error(ErrorKind::NormalizationFailure, "closed form vanishes identically");
  std::complex<double> phase = std::conj(at_peak) / std::abs(at_peak);
  double max_imag = 0.0;
  double first_lobe = 0.0;
  for (const auto& v : values) {
    const std::complex<double> r = phase * v;
    max_imag = std::max(max_imag, std::abs(r.imag()));
    if (first_lobe == 0.0 && std::abs(r) > 1e-6 * peak) first_lobe = r.real();
  }
  if (first_lobe < 0) phase = -phase;
  s.phase_ = phase;
  s.imag_ratio_ = max_imag / peak;

  auto density = [&](double x) {
    const double v = (phase * raw(x)).real();
    return v * v * d.weight(x);
  };
  QuadratureRule rule;
  try {
    rule = converged_rule(density, s.support_.lo, s.support_.hi, kNormalizationTolerance, 32);
  } catch (const std::runtime_error&) {
    throw Error(ErrorKind::NormalizationFailure, std::string(model_name(id)) + ": norm quadrature did not converge");
  }
  const double norm2 = rule.integrate(density);
  if (!(norm2 > 0) || !std::isfinite(norm2)) {
    throw Error(ErrorKind::NormalizationFailure, std::string(model_name(id)) + ": non-positive norm");
  }
  s.norm_const_ = 1.0 / std::sqrt(norm2);
  return s;
}

// ---------------------------------------------------------------------------
// Parameter flows

/// Data of the level-dependent parameter flow at level n.
struct ParameterFlow {
  ParameterSet shifted;       // flowed parameters
  double epsilon = 0.0;       // energy offset at the flowed parameters
  double energy_shifted = 0;  // level-n energy at the flowed parameters
  Field q;                    // multiplication operator multiplying (H - E)
  std::string q_label;
};

inline double flowed_coupling(const ParameterSet& p, int n) {
  return p.g * (n + p.l + 1.0) / (n + p.l + 2.0);
}

inline ParameterFlow parameter_flow(ModelId id, const ParameterSet& p, int n) {
  if (!has_parameter_flow(id)) {
    throw Error(ErrorKind::UnsupportedModel, std::string(model_name(id)) + " has no parameter flow");
  }
  validate(id, p);
  if (n < 0) throw Error(ErrorKind::InvalidLevel, "level must be non-negative");
  ParameterFlow f;
  f.shifted = p;
  f.shifted.g = flowed_coupling(p, n);
  f.energy_shifted = energy_formula(id, f.shifted, n);
  const double N = n + p.l + 1.0;
  switch (id) {
    case ModelId::HydrogenRadial:
      f.epsilon = 0.0;
      f.q = Field::constant(2.0);
      f.q_label = "2";
      break;
    case ModelId::RosenMorseSpherical:
      f.epsilon = 2.0 * N + 1.0;
      f.q = Field::of_coordinate([](RealJet x) { return -2.0 * cos(x); });
      f.q_label = "-2cos(x)";
      break;
    default:
      f.epsilon = -2.0 * N - 1.0;
      f.q = Field::of_coordinate([](RealJet x) { return -2.0 * cosh(x); });
      f.q_label = "-2cosh(x)";
      break;
  }
  return f;
}

}  // namespace intertwine

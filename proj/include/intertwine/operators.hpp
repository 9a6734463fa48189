#pragma once

// Spectral intertwining operators, ladder operators and supercharges, plus the
// operator identities they satisfy (as RelationSpec values ready to check).

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "models.hpp"

namespace intertwine {

/// One weighted basis function of a coefficient: weight * basis(x).
struct Term {
  double weight = 0.0;
  Field basis;
  std::string name;

  Field field() const { return weight * basis; }
};

/// Coefficient function stored as a linear combination of named basis
/// functions, so individual weights can be inspected and perturbed.
struct Coefficient {
  std::vector<Term> terms;

  Field field() const {
    std::vector<double> w;
    std::vector<Field> f;
    for (const auto& t : terms) {
      w.push_back(t.weight);
      f.push_back(t.basis);
    }
    return linear_combination(std::move(w), std::move(f));
  }
  double value(double x) const { return field().value(x); }
};

/// Shifts one weight of an operator's coefficients; indices run over the
/// a-terms first, then the b-terms.
struct CoefficientPerturbation {
  std::size_t term = 0;
  double delta = 1e-3;
};

/// a(x) d/dx + b(x).
struct FirstOrderOp {
  Coefficient a;
  Coefficient b;
  std::string label;

  Operator op() const {
    return differential_operator({b.field(), a.field()}, label);
  }
  Field apply(const Field& f) const { return op()(f); }

  std::size_t term_count() const { return a.terms.size() + b.terms.size(); }

  FirstOrderOp perturbed(const CoefficientPerturbation& p) const {
    if (p.term >= term_count()) throw std::out_of_range("FirstOrderOp::perturbed: no such term");
    FirstOrderOp r = *this;
    Term& t = p.term < a.terms.size() ? r.a.terms[p.term] : r.b.terms[p.term - a.terms.size()];
    t.weight += p.delta;
    r.label += "~";
    return r;
  }

  FirstOrderOp maybe_perturbed(const std::optional<CoefficientPerturbation>& p) const {
    return p ? perturbed(*p) : *this;
  }
};

namespace basis {

inline Term one(double w) { return {w, Field::constant(1.0), "1"}; }
inline Term x(double w) { return {w, Field::coordinate(), "x"}; }
inline Term x2(double w) {
  return {w, Field::of_coordinate([](RealJet x) { return x * x; }), "x^2"};
}
inline Term sin(double w) {
  return {w, Field::of_coordinate([](RealJet x) { return intertwine::sin(x); }), "sin(x)"};
}
inline Term cos(double w) {
  return {w, Field::of_coordinate([](RealJet x) { return intertwine::cos(x); }), "cos(x)"};
}
inline Term sinh(double w) {
  return {w, Field::of_coordinate([](RealJet x) { return intertwine::sinh(x); }), "sinh(x)"};
}
inline Term cosh(double w) {
  return {w, Field::of_coordinate([](RealJet x) { return intertwine::cosh(x); }), "cosh(x)"};
}
inline Term cot(double w) {
  return {w, Field::of_coordinate([](RealJet x) { return intertwine::cos(x) / intertwine::sin(x); }), "cot(x)"};
}

}  // namespace basis

// ---------------------------------------------------------------------------
// Hydrogen

/// r d/dr - g r/(n+l+2) + (n+l+2).
inline FirstOrderOp hydrogen_D(const ParameterSet& p, int n) {
  validate(ModelId::HydrogenRadial, p);
  const double k = n + p.l + 2.0;
  return {{{basis::x(1.0)}}, {{basis::x(-p.g / k), basis::one(k)}}, "D_" + std::to_string(n)};
}

/// alpha_n(l) = (n+l+1)/(n+l+2): the coupling flow written as a rescaling.
inline double hydrogen_alpha(const ParameterSet& p, int n) { return (n + p.l + 1.0) / (n + p.l + 2.0); }

/// Dn S(alpha_n): rescale first, then apply Dn.
inline Operator hydrogen_D_tilde(const ParameterSet& p, int n,
                                 const std::optional<CoefficientPerturbation>& perturb = std::nullopt) {
  const Operator d = hydrogen_D(p, n).maybe_perturbed(perturb).op();
  const Operator s = ScalingOp{hydrogen_alpha(p, n)}.op();
  return Operator([d, s](const Field& f) { return d(s(f)); }, 1, "D~_" + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Rosen-Morse

enum class RosenMorseKind { Spherical, Hyperbolic };

/// a_+(g,l,n), a_-(g,l,n) (complex, spherical) or b_+, b_- (real, hyperbolic).
inline std::pair<std::complex<double>, std::complex<double>> rosen_morse_jacobi_params(RosenMorseKind kind, double g,
                                                                                        double l, int n) {
  const double N = n + l + 1.0;
  if (kind == RosenMorseKind::Spherical) return {{-N, g / N}, {-N, -g / N}};
  return {{-N + g / N, 0.0}, {-N - g / N, 0.0}};
}

inline FirstOrderOp rosen_morse_D(RosenMorseKind kind, const ParameterSet& p, int n) {
  const ModelId id = kind == RosenMorseKind::Spherical ? ModelId::RosenMorseSpherical : ModelId::RosenMorseHyperbolic;
  validate(id, p);
  if (n < 0) throw Error(ErrorKind::InvalidLevel, "level must be non-negative");
  const double gn = flowed_coupling(p, n);
  if (kind == RosenMorseKind::Hyperbolic && !in_spectrum(id, {.g = gn, .l = p.l}, n)) {
    throw Error(ErrorKind::InvalidLevel, "level " + std::to_string(n) + " is not bound at the flowed coupling");
  }
  const auto [tp, tm] = rosen_morse_jacobi_params(kind, gn, p.l, n);
  const std::string label = "D_" + std::to_string(n);
  if (kind == RosenMorseKind::Spherical) {
    const double s = ((tp - tm) / std::complex<double>(0.0, 2.0)).real();
    const double c = (0.5 * (tp + tm)).real();
    return {{{basis::sin(-1.0)}}, {{basis::sin(s), basis::cos(c)}}, label};
  }
  const double s = (0.5 * (tp - tm)).real();
  const double c = (0.5 * (tp + tm)).real();
  return {{{basis::sinh(-1.0)}}, {{basis::sinh(s), basis::cosh(c)}}, label};
}

// ---------------------------------------------------------------------------
// Harmonic oscillator

enum class Ladder { Raise, Lower };

constexpr double sign_of(Ladder l) { return l == Ladder::Raise ? 1.0 : -1.0; }
constexpr const char* to_string(Ladder l) { return l == Ladder::Raise ? "+" : "-"; }

/// a_(+/-) = -/+ sqrt(1/(2 m w)) (d/dx -/+ m w x).
inline FirstOrderOp ho_ladder(Ladder which, const ParameterSet& p) {
  validate(ModelId::HarmonicOscillator, p);
  const double s = sign_of(which);
  const double k = std::sqrt(1.0 / (2.0 * p.m * p.omega));
  return {{{basis::one(-s * k)}}, {{basis::x(k * p.m * p.omega)}}, std::string("a") + to_string(which)};
}

/// x d/dx -/+ m w x^2 +/- (n + 1/2) + 1/2.
inline FirstOrderOp ho_Dn(Ladder which, const ParameterSet& p, int n) {
  validate(ModelId::HarmonicOscillator, p);
  const double s = sign_of(which);
  return {{{basis::x(1.0)}},
          {{basis::x2(-s * p.m * p.omega), basis::one(s * (n + 0.5) + 0.5)}},
          std::string("D") + to_string(which) + "_" + std::to_string(n)};
}

/// Level-independent second-order form x d/dx -/+ m w x^2 +/- H/w + 1/2.
inline Operator ho_Dhat(Ladder which, const ParameterSet& p) {
  const double s = sign_of(which);
  const Operator first = FirstOrderOp{{{basis::x(1.0)}}, {{basis::x2(-s * p.m * p.omega), basis::one(0.5)}}, ""}.op();
  return first + (s / p.omega) * hamiltonian(ModelId::HarmonicOscillator, p);
}

// ---------------------------------------------------------------------------
// Sinusoidal-coordinate ladder operators

/// Polynomial in the energy, coefficients in ascending powers.
struct EnergyPolynomial {
  std::vector<double> coeffs;
  double operator()(double e) const {
    double r = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * e + *it;
    return r;
  }
};

/// Closure data [H,[H,eta]] = [H,eta] R1(H) + eta R0(H) + R_{-1}(H).
struct ClosureData {
  FirstOrderOp commutator;  // [H, eta] as a first-order operator
  Field eta;
  std::string eta_label;
  EnergyPolynomial r1, r0, r_minus1;
};

/// alpha_(+/-)(E): roots with R0 = -alpha_- alpha_+ and R1 = alpha_+ + alpha_-.
inline double closure_alpha(const ClosureData& c, Ladder which, double e) {
  const double r1 = c.r1(e), r0 = c.r0(e);
  const double disc = r1 * r1 + 4.0 * r0;
  if (disc < 0) throw Error(ErrorKind::DivisionByZeroAlpha, "alpha_(+/-) are complex at this energy");
  return 0.5 * (r1 + sign_of(which) * std::sqrt(disc));
}

/// [H,eta] - eta alpha_(-/+)(E_n) + R_{-1}(E_n)/alpha_(+/-)(E_n).
inline FirstOrderOp sinusoidal_ladder(const ClosureData& c, double e_n, Ladder which) {
  const Ladder other = which == Ladder::Raise ? Ladder::Lower : Ladder::Raise;
  const double a_same = closure_alpha(c, which, e_n);
  const double a_other = closure_alpha(c, other, e_n);
  FirstOrderOp d = c.commutator;
  d.b.terms.push_back({-a_other, c.eta, c.eta_label});
  const double rm1 = c.r_minus1(e_n);
  if (rm1 != 0.0) {
    if (a_same == 0.0) throw Error(ErrorKind::DivisionByZeroAlpha, "alpha vanishes with non-zero R_{-1}");
    d.b.terms.push_back(basis::one(rm1 / a_same));
  }
  d.label = std::string("D") + to_string(which) + "(E_n)";
  return d;
}

/// eta = cos x for the single-particle Calogero-Sutherland Hamiltonian:
/// [H, cos x] = sin x d/dx + cos x / 2, R1 = 1, R0 = 2E - 1/4, R_{-1} = 0.
inline ClosureData cs_closure_data() {
  ClosureData c;
  c.commutator = {{{basis::sin(1.0)}}, {{basis::cos(0.5)}}, "[H,cos x]"};
  c.eta = basis::cos(1.0).field();
  c.eta_label = "cos(x)";
  c.r1 = {{1.0}};
  c.r0 = {{-0.25, 2.0}};
  c.r_minus1 = {{0.0}};
  return c;
}

/// D_(+/-)(E_n) for Calogero-Sutherland; reduces to sin x d/dx +/- (n+g) cos x.
inline FirstOrderOp cs_ladder(const ParameterSet& p, int n, Ladder which) {
  validate(ModelId::CalogeroSutherland, p);
  FirstOrderOp d = sinusoidal_ladder(cs_closure_data(), energy_formula(ModelId::CalogeroSutherland, p, n), which);
  d.label = std::string("D") + to_string(which) + "(E_" + std::to_string(n) + ")";
  return d;
}

/// Supercharges A = d/dx - g cot x and A^dagger = -d/dx - g cot x.
struct Supercharges {
  FirstOrderOp A;
  FirstOrderOp A_dagger;
};

inline Supercharges cs_supercharges(double g) {
  validate(ModelId::CalogeroSutherland, {.g = g});
  return {{{{basis::one(1.0)}}, {{basis::cot(-g)}}, "A(" + std::to_string(g) + ")"},
          {{{basis::one(-1.0)}}, {{basis::cot(-g)}}, "A+(" + std::to_string(g) + ")"}};
}

/// H_+(g) = A^dagger A / 2 + E_0(g) and H_-(g) = A A^dagger / 2 + E_0(g).
inline Operator cs_H_plus(double g) {
  const auto s = cs_supercharges(g);
  return 0.5 * (s.A_dagger.op() * s.A.op()) + 0.5 * g * g;
}
inline Operator cs_H_minus(double g) {
  const auto s = cs_supercharges(g);
  return 0.5 * (s.A.op() * s.A_dagger.op()) + 0.5 * g * g;
}

// ---------------------------------------------------------------------------
// Operator identities

/// lhs == rhs as operators, instantiated at concrete parameters and level.
struct RelationSpec {
  std::string id;
  ModelId model = ModelId::HarmonicOscillator;
  ParameterSet params;
  int n = 0;
  Operator lhs = Operator::identity();
  Operator rhs = Operator::identity();
  double energy_scale = 1.0;  // typical size of the constants, for residual scaling

  int required_order() const { return std::max(lhs.order(), rhs.order()); }
};

namespace detail {
inline double energy_scale(std::initializer_list<double> values) {
  double s = 1.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}
}  // namespace detail

/// Dn of a parameter-flow model.
inline FirstOrderOp flow_intertwiner(ModelId id, const ParameterSet& p, int n) {
  switch (id) {
    case ModelId::HydrogenRadial: return hydrogen_D(p, n);
    case ModelId::RosenMorseSpherical: return rosen_morse_D(RosenMorseKind::Spherical, p, n);
    case ModelId::RosenMorseHyperbolic: return rosen_morse_D(RosenMorseKind::Hyperbolic, p, n);
    default: throw Error(ErrorKind::UnsupportedModel, std::string(model_name(id)) + " has no parameter flow");
  }
}

/// H(g) Dn = Dn (H(g_n) + eps) + Q (H(g_n) - E_n(g_n)) for hydrogen and both
/// Rosen-Morse potentials.
inline RelationSpec intertwining_relation(ModelId id, const ParameterSet& p, int n,
                                          const std::optional<CoefficientPerturbation>& perturb = std::nullopt) {
  const ParameterFlow flow = parameter_flow(id, p, n);
  const Operator D = flow_intertwiner(id, p, n).maybe_perturbed(perturb).op();
  const Operator H = hamiltonian(id, p);
  const Operator Hs = hamiltonian(id, flow.shifted);
  const Operator Q = Operator::multiply(flow.q, flow.q_label);
  RelationSpec r;
  r.id = std::string(model_name(id)) + ".intertwining";
  r.model = id;
  r.params = p;
  r.n = n;
  r.lhs = H * D;
  r.rhs = D * (Hs + flow.epsilon) + Q * (Hs - flow.energy_shifted);
  r.energy_scale = detail::energy_scale({flow.epsilon, flow.energy_shifted, energy_formula(id, p, n + 1)});
  return r;
}

/// H(m,g) Dn S(alpha) = Dn S(alpha) H(m/alpha^2, g) + 2 S(alpha) (H(m/alpha^2, g) - E_n(m/alpha^2, g)).
inline RelationSpec hydrogen_composite_relation(const ParameterSet& p, int n,
                                                const std::optional<CoefficientPerturbation>& perturb = std::nullopt) {
  const double alpha = hydrogen_alpha(p, n);
  ParameterSet heavy = p;
  heavy.m = p.m / (alpha * alpha);
  const double e_n = energy_formula(ModelId::HydrogenRadial, heavy, n);
  const Operator Dt = hydrogen_D_tilde(p, n, perturb);
  const Operator H = hamiltonian(ModelId::HydrogenRadial, p);
  const Operator Hh = hamiltonian(ModelId::HydrogenRadial, heavy);
  const Operator S = ScalingOp{alpha}.op();
  RelationSpec r;
  r.id = "hydrogen.composite_intertwining";
  r.model = ModelId::HydrogenRadial;
  r.params = p;
  r.n = n;
  r.lhs = H * Dt;
  r.rhs = Dt * Hh + 2.0 * (S * (Hh - e_n));
  r.energy_scale = detail::energy_scale({e_n});
  return r;
}

/// [H, a_(+/-)] = +/- w a_(+/-).
inline RelationSpec ho_ladder_relation(const ParameterSet& p, Ladder which) {
  const Operator a = ho_ladder(which, p).op();
  const Operator H = hamiltonian(ModelId::HarmonicOscillator, p);
  RelationSpec r;
  r.id = std::string("ho.ladder_commutation") + to_string(which);
  r.model = ModelId::HarmonicOscillator;
  r.params = p;
  r.lhs = commutator(H, a);
  r.rhs = (sign_of(which) * p.omega) * a;
  r.energy_scale = detail::energy_scale({p.omega});
  return r;
}

/// [H, D_n^(+/-)] = +/- 2 w D_n^(+/-) + 2 (H - E_n).
inline RelationSpec ho_level_relation(const ParameterSet& p, int n, Ladder which,
                                      const std::optional<CoefficientPerturbation>& perturb = std::nullopt) {
  const Operator D = ho_Dn(which, p, n).maybe_perturbed(perturb).op();
  const Operator H = hamiltonian(ModelId::HarmonicOscillator, p);
  const double e_n = energy_formula(ModelId::HarmonicOscillator, p, n);
  RelationSpec r;
  r.id = std::string("ho.level_commutation") + to_string(which);
  r.model = ModelId::HarmonicOscillator;
  r.params = p;
  r.n = n;
  r.lhs = commutator(H, D);
  r.rhs = (2.0 * sign_of(which) * p.omega) * D + 2.0 * (H - e_n);
  r.energy_scale = detail::energy_scale({e_n, 2.0 * p.omega});
  return r;
}

/// [H, D_(+/-)(E_n)] = alpha_(+/-)(E_n) D_(+/-)(E_n) + 2 cos x (H - E_n).
inline RelationSpec cs_ladder_relation(const ParameterSet& p, int n, Ladder which,
                                       const std::optional<CoefficientPerturbation>& perturb = std::nullopt) {
  const Operator D = cs_ladder(p, n, which).maybe_perturbed(perturb).op();
  const Operator H = hamiltonian(ModelId::CalogeroSutherland, p);
  const double e_n = energy_formula(ModelId::CalogeroSutherland, p, n);
  const double alpha = closure_alpha(cs_closure_data(), which, e_n);
  const Operator Q = Operator::multiply(basis::cos(2.0).field(), "2cos(x)");
  RelationSpec r;
  r.id = std::string("cs.ladder_commutation") + to_string(which);
  r.model = ModelId::CalogeroSutherland;
  r.params = p;
  r.n = n;
  r.lhs = commutator(H, D);
  r.rhs = alpha * D + Q * (H - e_n);
  r.energy_scale = detail::energy_scale({e_n, alpha});
  return r;
}

/// [H,[H,cos x]] = [H,cos x] + cos x (2H - 1/4), with the inner commutator
/// in its first-order form sin x d/dx + cos x / 2.
inline RelationSpec cs_closure_relation(const ParameterSet& p) {
  const Operator H = hamiltonian(ModelId::CalogeroSutherland, p);
  const ClosureData data = cs_closure_data();
  const Operator eta = Operator::multiply(data.eta, data.eta_label);
  const Operator c = data.commutator.op();
  RelationSpec r;
  r.id = "cs.closure";
  r.model = ModelId::CalogeroSutherland;
  r.params = p;
  r.lhs = commutator(H, c);
  r.rhs = c + eta * (2.0 * H - 0.25);
  r.energy_scale = detail::energy_scale({0.5 * p.g * p.g});
  return r;
}

/// [H, cos x] = sin x d/dx + cos x / 2.
inline RelationSpec cs_eta_commutator_relation(const ParameterSet& p) {
  const Operator H = hamiltonian(ModelId::CalogeroSutherland, p);
  const ClosureData data = cs_closure_data();
  RelationSpec r;
  r.id = "cs.coordinate_commutator";
  r.model = ModelId::CalogeroSutherland;
  r.params = p;
  r.lhs = commutator(H, Operator::multiply(data.eta, data.eta_label));
  r.rhs = data.commutator.op();
  r.energy_scale = detail::energy_scale({0.5 * p.g * p.g});
  return r;
}

/// A^dagger A / 2 + g^2/2 = H_CS(g).
inline RelationSpec cs_factorization_relation(const ParameterSet& p) {
  RelationSpec r;
  r.id = "cs.factorization";
  r.model = ModelId::CalogeroSutherland;
  r.params = p;
  r.lhs = cs_H_plus(p.g);
  r.rhs = hamiltonian(ModelId::CalogeroSutherland, p);
  r.energy_scale = detail::energy_scale({0.5 * p.g * p.g});
  return r;
}

}  // namespace intertwine

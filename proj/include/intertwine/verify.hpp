#pragma once

// Verification harness: operator identities on test-function families,
// mapping statements between normalized eigenstates, energy identities,
// shape invariance and ladder-built spectra.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "models.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "tolerances.hpp"

namespace intertwine {

// ---------------------------------------------------------------------------
// Test functions

struct TestFunction {
  std::string name;
  Field f;
};

struct TestFunctionFamily {
  std::vector<TestFunction> members;
  std::vector<double> grid;
};

struct FamilyConfig {
  int eigenstates = 6;
  int random_members = 4;
  std::uint64_t seed = 0;
  int grid_points = 241;
};

inline constexpr int kTestFunctionOrder = 4;
inline constexpr double kInteriorMargin = 1e-8;

/// Uniform points on [lo + d, hi - d] with d = 1e-8 (hi - lo).
inline std::vector<double> interior_grid(const Interval& s, int points) {
  const double margin = kInteriorMargin * s.length();
  const double lo = s.lo + margin, hi = s.hi - margin;
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  return g;
}

/// Eigenstates 0..N-1 of (model, p) and seeded random combinations of them.
inline TestFunctionFamily test_family(ModelId id, const ParameterSet& p, const FamilyConfig& cfg = {}) {
  int count = cfg.eigenstates;
  if (const auto bound = bound_state_count(id, p)) count = std::min(count, *bound);
  if (count < 1) throw Error(ErrorKind::IndexOutOfSpectrum, std::string(model_name(id)) + " has no bound states");
  TestFunctionFamily tf;
  std::vector<Field> states;
  for (int n = 0; n < count; ++n) {
    states.push_back(eigenfunction(id, p, n).field().limited_to(kTestFunctionOrder));
    tf.members.push_back({"psi_" + std::to_string(n), states.back()});
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int r = 0; r < cfg.random_members; ++r) {
    std::vector<double> c(count);
    for (double& x : c) x = coeff(rng);
    tf.members.push_back({"random_" + std::to_string(r), linear_combination(c, states)});
  }
  tf.grid = interior_grid(support_up_to(id, p, count - 1), cfg.grid_points);
  return tf;
}

// ---------------------------------------------------------------------------
// Operator identities

/// max |L f - R f| / max(max |L f|, ||f|| E) over the grid.
inline double relation_residual(const RelationSpec& spec, const Field& f, const std::vector<double>& grid) {
  const Field l = spec.lhs(f);
  const Field r = spec.rhs(f);
  double diff = 0.0, lmax = 0.0, fmax = 0.0;
  for (double x : grid) {
    const double lv = l.value(x), rv = r.value(x);
    diff = std::max(diff, std::abs(lv - rv));
    lmax = std::max(lmax, std::abs(lv));
    fmax = std::max(fmax, std::abs(f.value(x)));
  }
  if (diff == 0.0) return 0.0;
  const double scale = std::max(lmax, fmax * spec.energy_scale);
  return scale > 0 ? diff / scale : std::numeric_limits<double>::infinity();
}

inline VerificationReport check_relation_identity(const RelationSpec& spec, const TestFunctionFamily& tf,
                                                  double tolerance) {
  VerificationReport r;
  r.relation_id = spec.id;
  r.model = spec.model;
  r.params = spec.params;
  r.n = r.n_max = spec.n;
  for (const auto& m : tf.members) r.below(m.name, relation_residual(spec, m.f, tf.grid), tolerance);
  return r;
}

// ---------------------------------------------------------------------------
// Mapping statements

struct MappingCheck {
  double c = 0.0;             // least-squares constant in D psi ~ c psi_target
  double rel_residual = std::numeric_limits<double>::infinity();
  double overlap = 0.0;       // |<D psi, psi_target>| / ||D psi||
  int m = 0;                  // detected level shift
  int target_level = 0;
  double image_norm = 0.0;
  double predicted_energy = 0.0;
  double target_energy = 0.0;
  double rayleigh_energy = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

/// Level of (id, p) whose energy equals e, searching up to a few levels past hint.
inline std::optional<int> level_with_energy(ModelId id, const ParameterSet& p, double e, int hint) {
  const int top = std::max(hint, 0) + 4;
  for (int j = 0; j <= top; ++j) {
    if (!in_spectrum(id, p, j)) break;
    if (std::abs(energy_formula(id, p, j) - e) <= 1e-10 * std::max(1.0, std::abs(e))) return j;
  }
  return std::nullopt;
}

inline Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

}  // namespace detail

inline constexpr double kDegenerateImageNorm = 1e-12;

/// Fits op(source) against the eigenstate of the target model whose energy
/// equals predicted_energy.  The level shift is read off from that match.
inline MappingCheck check_mapping(const Operator& op, const Field& source, int source_level,
                                  const Interval& source_support, ModelId model, const ParameterSet& target,
                                  double predicted_energy) {
  MappingCheck mc;
  mc.predicted_energy = predicted_energy;
  const Field img = op(source);
  const DomainSpec d = domain(model);

  auto image_density = [&](double x) {
    const double v = img.value(x);
    return v * v * d.weight(x);
  };
  // Coarse look first: an annihilated image is roundoff noise and would never
  // pass a convergence test.
  const auto level = detail::level_with_energy(model, target, predicted_energy, source_level);
  const Interval region = level ? detail::hull(source_support, support(model, target, *level)) : source_support;
  const QuadratureRule coarse = composite_gauss_legendre(region.lo, region.hi, 64, 20);
  if (std::sqrt(coarse.integrate(image_density)) < kDegenerateImageNorm) {
    throw Error(ErrorKind::DegenerateImage, op.label() + " annihilates the source state");
  }
  if (!level) {
    throw Error(ErrorKind::TargetOutOfSpectrum, std::string(model_name(model)) + ": no bound state at energy " +
                                                    std::to_string(predicted_energy));
  }
  const EigenState t = eigenfunction(model, target, *level);
  mc.target_level = *level;
  mc.m = *level - source_level;
  mc.target_energy = t.energy();

  auto both = [&](double x) {
    const double v = img.value(x), u = t.value(x);
    return (v * v + u * u) * d.weight(x);
  };
  const QuadratureRule rule = converged_rule(both, region.lo, region.hi, 1e-13, 32);
  const double norm2 = rule.integrate(image_density);
  mc.image_norm = std::sqrt(norm2);
  mc.c = rule.integrate([&](double x) { return img.value(x) * t.value(x) * d.weight(x); });
  const double c = mc.c;
  const double res2 = rule.integrate([&](double x) {
    const double e = img.value(x) - c * t.value(x);
    return e * e * d.weight(x);
  });
  mc.rel_residual = c != 0.0 ? std::sqrt(std::max(res2, 0.0)) / std::abs(c) : std::numeric_limits<double>::infinity();
  mc.overlap = std::abs(c) / mc.image_norm;

  if (source.max_order() >= op.order() + 2) {
    const Field h_img = hamiltonian(model, target)(img);
    mc.rayleigh_energy = rule.integrate([&](double x) { return img.value(x) * h_img.value(x) * d.weight(x); }) / norm2;
  }
  return mc;
}

/// Dn psi_n(flowed parameters) against psi_{n+1} for the parameter-flow models.
inline MappingCheck check_mapping(ModelId id, const ParameterSet& p, int n) {
  if (!in_spectrum(id, p, n + 1)) {
    throw Error(ErrorKind::TargetOutOfSpectrum,
                std::string(model_name(id)) + ": level " + std::to_string(n + 1) + " is not a bound state");
  }
  const ParameterFlow flow = parameter_flow(id, p, n);
  const EigenState src = eigenfunction(id, flow.shifted, n);
  return check_mapping(flow_intertwiner(id, p, n).op(), src.field(), n, src.support(), id, p,
                       flow.energy_shifted + flow.epsilon);
}

/// psi_n(g; alpha r) against psi_n(alpha g; r).
inline MappingCheck check_hydrogen_scaling(const ParameterSet& p, int n, double alpha) {
  const EigenState src = eigenfunction(ModelId::HydrogenRadial, p, n);
  ParameterSet target = p;
  target.g = alpha * p.g;
  Interval stretched = src.support();
  stretched.hi /= alpha;
  return check_mapping(ScalingOp{alpha}.op(), src.field(), n, stretched, ModelId::HydrogenRadial, target,
                       energy_formula(ModelId::HydrogenRadial, target, n));
}

/// Dn S(alpha_n) psi_n(g) against psi_{n+1}(g).
inline MappingCheck check_hydrogen_composite_mapping(const ParameterSet& p, int n) {
  const EigenState src = eigenfunction(ModelId::HydrogenRadial, p, n);
  const ParameterFlow flow = parameter_flow(ModelId::HydrogenRadial, p, n);
  Interval stretched = src.support();
  stretched.hi /= hydrogen_alpha(p, n);
  return check_mapping(hydrogen_D_tilde(p, n), src.field(), n, stretched, ModelId::HydrogenRadial, p,
                       flow.energy_shifted + flow.epsilon);
}

/// Report row for a mapping check with an expected level shift.
inline VerificationReport mapping_report(std::string relation_id, ModelId id, const ParameterSet& p, int n,
                                         const MappingCheck& mc, int expected_shift, double tolerance) {
  VerificationReport r;
  r.relation_id = std::move(relation_id);
  r.model = id;
  r.params = p;
  r.n = r.n_max = n;
  r.below("relative_residual", mc.rel_residual, tolerance);
  r.at_least("abs_fitted_c", std::abs(mc.c), kDegenerateImageNorm);
  r.info("fitted_c", mc.c);
  r.info("level_shift", mc.m);
  r.below("level_shift_mismatch", std::abs(mc.m - expected_shift), 0.5);
  if (std::isfinite(mc.rayleigh_energy)) {
    r.below("rayleigh_energy_mismatch",
            std::abs(mc.rayleigh_energy - mc.target_energy) / std::max(1.0, std::abs(mc.target_energy)), tolerance);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Energy identities

/// E_{n+1}(g) = E_n(g_n) + eps_n per level, pure arithmetic.
inline std::vector<VerificationReport> check_energy_chain(ModelId id, const ParameterSet& p, int n_max,
                                                          const Tolerances& tol = {}) {
  std::vector<VerificationReport> out;
  for (int n = 0; n <= n_max; ++n) {
    if (!in_spectrum(id, p, n + 1)) break;
    const ParameterFlow flow = parameter_flow(id, p, n);
    const double lhs = energy_formula(id, p, n + 1);
    const double rhs = flow.energy_shifted + flow.epsilon;
    const double abs = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    VerificationReport r;
    r.relation_id = std::string(model_name(id)) + ".energy_chain";
    r.model = id;
    r.params = p;
    r.n = r.n_max = n;
    r.below("relative_discrepancy", abs == 0.0 ? 0.0 : abs / scale, tol.arithmetic);
    r.info("absolute_discrepancy", abs);
    r.info("energy_next_level", lhs);
    r.info("flowed_energy_plus_offset", rhs);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ladder, closure and supersymmetry checks

/// Closure relation per member, plus the first-order form of [H, cos x] it relies on.
inline VerificationReport check_closure(const ParameterSet& p, const TestFunctionFamily& tf,
                                        const Tolerances& tol = {}) {
  VerificationReport r = check_relation_identity(cs_closure_relation(p), tf, tol.closure);
  const RelationSpec inner = cs_eta_commutator_relation(p);
  double worst = 0.0;
  for (const auto& m : tf.members) worst = std::max(worst, relation_residual(inner, m.f, tf.grid));
  r.below("coordinate_commutator", worst, tol.relation);
  return r;
}

/// Level-dependent commutation identity on tf, plus agreement of the
/// level-independent form with Dn on psi_n.
inline VerificationReport check_ho_commutation(const ParameterSet& p, int n, Ladder which,
                                               const TestFunctionFamily& tf, const Tolerances& tol = {}) {
  VerificationReport r = check_relation_identity(ho_level_relation(p, n, which), tf, tol.relation);
  const EigenState psi = eigenfunction(ModelId::HarmonicOscillator, p, n);
  const Field hat = ho_Dhat(which, p)(psi.field());
  const Field level = ho_Dn(which, p, n).apply(psi.field());
  double diff = 0.0, lmax = 0.0, fmax = 0.0;
  for (double x : tf.grid) {
    diff = std::max(diff, std::abs(hat.value(x) - level.value(x)));
    lmax = std::max(lmax, std::abs(level.value(x)));
    fmax = std::max(fmax, std::abs(psi.value(x)));
  }
  const double scale = std::max(lmax, fmax * std::max(1.0, psi.energy() / p.omega));
  r.below("level_independent_form_on_psi_n", diff == 0.0 ? 0.0 : diff / scale, tol.relation);
  return r;
}

/// max |op psi| / max |psi| on the grid.
inline double annihilation_ratio(const Operator& op, const Field& psi, const std::vector<double>& grid) {
  const Field img = op(psi);
  double a = 0.0, b = 0.0;
  for (double x : grid) {
    a = std::max(a, std::abs(img.value(x)));
    b = std::max(b, std::abs(psi.value(x)));
  }
  return a / b;
}

/// H_-(g) f = H_+(f(g)) f + eps f on tf: fits eps per member and requires the
/// fits to agree.  Throws NonConstantEpsilon when they do not.
inline VerificationReport check_shape_invariance(const Operator& h_minus, const Operator& h_plus_flowed,
                                                 const TestFunctionFamily& tf, double energy_scale,
                                                 const Tolerances& tol = {}) {
  VerificationReport r;
  std::vector<double> eps;
  for (const auto& m : tf.members) {
    const Field a = h_minus(m.f), b = h_plus_flowed(m.f);
    std::vector<double> delta, f;
    double amax = 0.0, fmax = 0.0;
    for (double x : tf.grid) {
      delta.push_back(a.value(x) - b.value(x));
      f.push_back(m.f.value(x));
      amax = std::max(amax, std::abs(a.value(x)));
      fmax = std::max(fmax, std::abs(f.back()));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      num += delta[i] * f[i];
      den += f[i] * f[i];
    }
    const double e = num / den;
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(delta[i] - e * f[i]));
    const double scale = std::max(amax, fmax * energy_scale);
    r.below(m.name, worst == 0.0 ? 0.0 : worst / scale, tol.shape);
    eps.push_back(e);
  }
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  const double spread = *hi - *lo;
  if (spread > tol.epsilon_spread) {
    throw Error(ErrorKind::NonConstantEpsilon, "fitted offsets spread by " + std::to_string(spread));
  }
  double mean = 0.0;
  for (double e : eps) mean += e;
  r.info("epsilon", mean / eps.size());
  r.below("epsilon_spread", spread, tol.epsilon_spread);
  return r;
}

/// Calogero-Sutherland instance: flow g -> g + 1 with eps = 0, plus the
/// energy consequence E_n(g) = E_0(g + n).
inline VerificationReport check_cs_shape_invariance(const ParameterSet& p, const TestFunctionFamily& tf,
                                                    const Tolerances& tol = {}, int n_max = 10) {
  VerificationReport r = check_shape_invariance(cs_H_minus(p.g), cs_H_plus(p.g + 1.0), tf,
                                                0.5 * (p.g + 1.0) * (p.g + 1.0), tol);
  r.relation_id = "cs.shape_invariance";
  r.model = ModelId::CalogeroSutherland;
  r.params = p;
  r.n = 0;
  r.n_max = n_max;
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    ParameterSet shifted = p;
    shifted.g = p.g + n;
    const double a = energy_formula(ModelId::CalogeroSutherland, p, n);
    const double b = energy_formula(ModelId::CalogeroSutherland, shifted, 0);
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
  r.below("energy_chain_discrepancy", worst, tol.arithmetic);
  return r;
}

// ---------------------------------------------------------------------------
// Ladder-built spectra

struct ChainLevel {
  int n = 0;
  double e_direct = 0.0;
  double e_chain = 0.0;
  double overlap = 0.0;
};

namespace detail {

struct ChainStage {
  Operator op;
  ParameterSet target;
  int source_level;
  double energy_after;
};

/// Applies the stages to a ground state, checking every intermediate image
/// against the expected eigenstate.  Returns the final overlap.
inline double run_chain(ModelId id, const EigenState& start, const std::vector<ChainStage>& stages,
                        double tolerance) {
  Field f = start.field();
  Interval where = start.support();
  double overlap = 1.0;
  for (const auto& s : stages) {
    const MappingCheck mc = check_mapping(s.op, f, s.source_level, where, id, s.target, s.energy_after);
    if (!(mc.rel_residual <= tolerance)) {
      throw Error(ErrorKind::ChainBreak, s.op.label() + " stage residual " + std::to_string(mc.rel_residual));
    }
    const Operator op = s.op;
    const double inv = 1.0 / mc.image_norm;
    const Field prev = f;
    f = inv * op(prev);
    where = detail::hull(where, support(id, s.target, mc.target_level));
    overlap = mc.overlap;
  }
  return overlap;
}

}  // namespace detail

/// Builds psi_1..psi_N purely from ground states at flowed parameters by
/// operator chains and compares with the closed forms.
inline std::vector<ChainLevel> ladder_construct_spectrum(ModelId id, const ParameterSet& p, int N,
                                                         const Tolerances& tol = {}) {
  validate(id, p);
  if (N < 0 || !in_spectrum(id, p, N)) {
    throw Error(ErrorKind::TargetOutOfSpectrum,
                std::string(model_name(id)) + ": level " + std::to_string(N) + " is not a bound state");
  }
  std::vector<ChainLevel> out;
  for (int k = 0; k <= N; ++k) {
    ChainLevel lvl;
    lvl.n = k;
    lvl.e_direct = eigenvalue(id, p, k);
    std::vector<detail::ChainStage> stages;
    ParameterSet start = p;
    switch (id) {
      case ModelId::HarmonicOscillator: {
        double e = energy_formula(id, p, 0);
        for (int j = 0; j < k; ++j) {
          e += p.omega;
          stages.push_back({ho_ladder(Ladder::Raise, p).op(), p, j, e});
        }
        lvl.e_chain = e;
        break;
      }
      case ModelId::CalogeroSutherland: {
        // psi_k(g) ~ A+(g) A+(g+1) ... A+(g+k-1) psi_0(g+k), energy unchanged.
        start.g = p.g + k;
        const double e = energy_formula(id, start, 0);
        for (int j = k - 1; j >= 0; --j) {
          ParameterSet t = p;
          t.g = p.g + j;
          stages.push_back({cs_supercharges(t.g).A_dagger.op(), t, k - 1 - j, e});
        }
        lvl.e_chain = e;
        break;
      }
      default: {
        // params[j] carries level j: params[k] = p, params[j] = flow(params[j+1], j).
        std::vector<ParameterSet> params(k + 1, p);
        for (int j = k - 1; j >= 0; --j) params[j] = parameter_flow(id, params[j + 1], j).shifted;
        start = params[0];
        double e = energy_formula(id, start, 0);
        for (int j = 0; j < k; ++j) {
          e += parameter_flow(id, params[j + 1], j).epsilon;
          stages.push_back({flow_intertwiner(id, params[j + 1], j).op(), params[j + 1], j, e});
        }
        lvl.e_chain = e;
        break;
      }
    }
    lvl.overlap = detail::run_chain(id, eigenfunction(id, start, 0), stages, tol.mapping);
    out.push_back(lvl);
  }
  return out;
}

inline std::vector<VerificationReport> spectrum_reports(ModelId id, const ParameterSet& p,
                                                        const std::vector<ChainLevel>& levels,
                                                        const Tolerances& tol = {}) {
  std::vector<VerificationReport> out;
  for (const auto& l : levels) {
    VerificationReport r;
    r.relation_id = std::string(model_name(id)) + ".ladder_spectrum";
    r.model = id;
    r.params = p;
    r.n = r.n_max = l.n;
    r.info("energy_direct", l.e_direct);
    r.info("energy_chain", l.e_chain);
    const double d = std::abs(l.e_direct - l.e_chain);
    r.below("energy_discrepancy", d == 0.0 ? 0.0 : d / std::max(1.0, std::abs(l.e_direct)), 1e-12);
    r.below("one_minus_overlap", 1.0 - l.overlap, tol.overlap);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Eigenpairs

/// Residual ||(H - E) psi|| / ||psi||, normalization, realness, node count and
/// orthogonality against lower levels, for n = 0..n_max.
inline std::vector<VerificationReport> check_eigenpairs(ModelId id, const ParameterSet& p, int n_max,
                                                        const Tolerances& tol = {}) {
  if (const auto count = bound_state_count(id, p)) n_max = std::min(n_max, *count - 1);
  std::vector<EigenState> states;
  std::vector<Field> residuals;
  const Operator H = hamiltonian(id, p);
  for (int n = 0; n <= n_max; ++n) {
    states.push_back(eigenfunction(id, p, n));
    residuals.push_back(H(states.back().field()) - states.back().energy() * states.back().field());
  }
  if (states.empty()) return {};
  const DomainSpec d = domain(id);
  const Interval s = support_up_to(id, p, n_max);
  const QuadratureRule rule = converged_rule(
      [&](double x) {
        double v = 0.0;
        for (const auto& st : states) v += st.value(x) * st.value(x);
        return v * d.weight(x);
      },
      s.lo, s.hi, 1e-13, 32);
  std::vector<std::size_t> order(rule.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rule.x[a] < rule.x[b]; });

  std::vector<std::vector<double>> samples(states.size(), std::vector<double>(rule.size()));
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t i = 0; i < rule.size(); ++i) samples[k][i] = states[k].value(rule.x[i]);

  std::vector<VerificationReport> out;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const int n = static_cast<int>(k);
    double norm2 = 0.0, res2 = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double w = rule.w[i] * d.weight(rule.x[i]);
      const double r = residuals[k].value(rule.x[i]);
      norm2 += w * samples[k][i] * samples[k][i];
      res2 += w * r * r;
    }
    double ortho = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      double ip = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) ip += rule.w[i] * d.weight(rule.x[i]) * samples[j][i] * samples[k][i];
      ortho = std::max(ortho, std::abs(ip));
    }
    double peak = 0.0;
    for (double v : samples[k]) peak = std::max(peak, std::abs(v));
    int nodes = 0;
    double last = 0.0;
    for (std::size_t i : order) {
      const double v = samples[k][i];
      if (std::abs(v) < 1e-10 * peak) continue;
      if (last != 0.0 && (v > 0) != (last > 0)) ++nodes;
      last = v;
    }
    VerificationReport r;
    r.relation_id = std::string(model_name(id)) + ".eigenpair";
    r.model = id;
    r.params = p;
    r.n = r.n_max = n;
    r.below("eigen_residual", std::sqrt(res2 / norm2), tol.eigenpair);
    r.below("norm_error", std::abs(norm2 - 1.0), 1e-10);
    r.below("imaginary_ratio", states[k].imag_ratio(), 1e-10);
    r.below("node_count_mismatch", std::abs(nodes - n), 0.5);
    if (k > 0) r.below("max_overlap_with_lower_levels", ortho, tol.orthogonality);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite

struct SuiteConfig {
  std::vector<ModelId> models{std::begin(kAllModels), std::end(kAllModels)};
  std::optional<ParameterSet> params;  // replaces the default parameter sets
  int parameter_sets = 3;              // leading default sets used otherwise
  int n_max = 8;
  Tolerances tol;
  std::uint64_t seed = 0;
  int random_members = 4;
  unsigned threads = worker_count();
};

struct SuiteResult {
  std::vector<VerificationReport> reports;
  std::vector<std::string> notes;

  bool pass() const {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass(); });
  }
};

namespace detail {

using Task = std::function<std::vector<VerificationReport>()>;

/// Runs fn, converting an exception into a failed row carrying its message.
inline Task guarded_task(std::string relation_id, ModelId id, ParameterSet p, int n, Task fn) {
  return [=]() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<VerificationReport> out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      VerificationReport r;
      r.relation_id = relation_id;
      r.model = id;
      r.params = p;
      r.n = r.n_max = n;
      r.failed_hard = true;
      r.note = e.what();
      out = {r};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : out) r.wall_seconds = dt / out.size();
    return out;
  };
}

inline std::vector<VerificationReport> one(VerificationReport r) { return {std::move(r)}; }

inline void add_model_tasks(ModelId id, const ParameterSet& p, const SuiteConfig& cfg, std::vector<Task>& tasks,
                            std::vector<std::string>& notes) {
  const Tolerances tol = cfg.tol;
  const FamilyConfig fam{6, cfg.random_members, cfg.seed};
  const std::string name(model_name(id));
  int n_rel = cfg.n_max;  // highest level for relations and mappings
  if (const auto count = bound_state_count(id, p)) {
    n_rel = std::min(n_rel, *count - 2);
    if (*count - 1 < cfg.n_max) {
      notes.push_back(name + " g=" + format_double(p.g) + " l=" + format_double(p.l) + ": bound spectrum has " +
                      std::to_string(*count) + " levels; checks truncated at n=" + std::to_string(*count - 1));
    }
  }
  tasks.push_back(guarded_task(name + ".eigenpair", id, p, 0, [=] { return check_eigenpairs(id, p, cfg.n_max, tol); }));

  const int chain_n = std::min(cfg.n_max, 5);
  tasks.push_back(guarded_task(name + ".ladder_spectrum", id, p, chain_n, [=] {
    int N = chain_n;
    if (const auto count = bound_state_count(id, p)) N = std::min(N, *count - 1);
    return spectrum_reports(id, p, ladder_construct_spectrum(id, p, N, tol), tol);
  }));

  switch (id) {
    case ModelId::HarmonicOscillator: {
      for (Ladder w : {Ladder::Raise, Ladder::Lower}) {
        const std::string s = to_string(w);
        tasks.push_back(guarded_task("ho.ladder_commutation" + s, id, p, 0, [=] {
          return one(check_relation_identity(ho_ladder_relation(p, w), test_family(id, p, fam), tol.relation));
        }));
        for (int n = 0; n <= n_rel; ++n) {
          tasks.push_back(guarded_task("ho.level_commutation" + s, id, p, n, [=] {
            return one(check_ho_commutation(p, n, w, test_family(id, p, fam), tol));
          }));
          const int shift1 = w == Ladder::Raise ? 1 : -1;
          if (n + shift1 >= 0) {
            tasks.push_back(guarded_task("ho.ladder_mapping" + s, id, p, n, [=] {
              const EigenState src = eigenfunction(id, p, n);
              const auto mc = check_mapping(ho_ladder(w, p).op(), src.field(), n, src.support(), id, p,
                                            src.energy() + shift1 * p.omega);
              return one(mapping_report("ho.ladder_mapping" + s, id, p, n, mc, shift1, tol.mapping));
            }));
          }
          if (n + 2 * shift1 >= 0) {
            tasks.push_back(guarded_task("ho.level_mapping" + s, id, p, n, [=] {
              const EigenState src = eigenfunction(id, p, n);
              const auto mc = check_mapping(ho_Dn(w, p, n).op(), src.field(), n, src.support(), id, p,
                                            src.energy() + 2 * shift1 * p.omega);
              return one(mapping_report("ho.level_mapping" + s, id, p, n, mc, 2 * shift1, tol.mapping));
            }));
          }
        }
      }
      tasks.push_back(guarded_task("ho.annihilation", id, p, 0, [=] {
        const TestFunctionFamily tf = test_family(id, p, {1, 0, cfg.seed});
        VerificationReport r;
        r.relation_id = "ho.annihilation";
        r.model = id;
        r.params = p;
        r.below("max_ratio", annihilation_ratio(ho_ladder(Ladder::Lower, p).op(), tf.members[0].f, tf.grid),
                tol.annihilation);
        return one(r);
      }));
      break;
    }
    case ModelId::CalogeroSutherland: {
      for (Ladder w : {Ladder::Raise, Ladder::Lower}) {
        const std::string s = to_string(w);
        for (int n = 0; n <= n_rel; ++n) {
          tasks.push_back(guarded_task("cs.ladder_commutation" + s, id, p, n, [=] {
            return one(check_relation_identity(cs_ladder_relation(p, n, w), test_family(id, p, fam), tol.relation));
          }));
          const int shift = w == Ladder::Raise ? 1 : -1;
          if (n + shift < 0) continue;
          tasks.push_back(guarded_task("cs.ladder_mapping" + s, id, p, n, [=] {
            const EigenState src = eigenfunction(id, p, n);
            const double alpha = closure_alpha(cs_closure_data(), w, src.energy());
            const auto mc = check_mapping(cs_ladder(p, n, w).op(), src.field(), n, src.support(), id, p,
                                          src.energy() + alpha);
            VerificationReport r = mapping_report("cs.ladder_mapping" + s, id, p, n, mc, shift, tol.mapping);
            const double gap = energy_formula(id, p, n + shift) - src.energy();
            r.below("gap_vs_alpha", std::abs(gap - alpha) / std::max(1.0, std::abs(alpha)), tol.gap);
            return one(r);
          }));
        }
      }
      tasks.push_back(guarded_task("cs.closure", id, p, 0, [=] {
        return one(check_closure(p, test_family(id, p, fam), tol));
      }));
      tasks.push_back(guarded_task("cs.factorization", id, p, 0, [=] {
        return one(check_relation_identity(cs_factorization_relation(p), test_family(id, p, fam), tol.relation));
      }));
      tasks.push_back(guarded_task("cs.shape_invariance", id, p, 0, [=] {
        return one(check_cs_shape_invariance(p, test_family(id, p, fam), tol));
      }));
      tasks.push_back(guarded_task("cs.annihilation", id, p, 0, [=] {
        const TestFunctionFamily tf = test_family(id, p, {1, 0, cfg.seed});
        VerificationReport r;
        r.relation_id = "cs.annihilation";
        r.model = id;
        r.params = p;
        r.below("max_ratio", annihilation_ratio(cs_supercharges(p.g).A.op(), tf.members[0].f, tf.grid),
                tol.annihilation);
        return one(r);
      }));
      break;
    }
    default: {
      tasks.push_back(guarded_task(name + ".energy_chain", id, p, 0,
                                   [=] { return check_energy_chain(id, p, cfg.n_max, tol); }));
      for (int n = 0; n <= n_rel; ++n) {
        tasks.push_back(guarded_task(name + ".intertwining", id, p, n, [=] {
          const RelationSpec spec = intertwining_relation(id, p, n);
          return one(check_relation_identity(spec, test_family(id, parameter_flow(id, p, n).shifted, fam),
                                             tol.relation));
        }));
        tasks.push_back(guarded_task(name + ".mapping", id, p, n, [=] {
          return one(mapping_report(name + ".mapping", id, p, n, check_mapping(id, p, n), 1, tol.mapping));
        }));
        if (id != ModelId::HydrogenRadial) continue;
        tasks.push_back(guarded_task("hydrogen.composite_intertwining", id, p, n, [=] {
          ParameterSet heavy = p;
          const double a = hydrogen_alpha(p, n);
          heavy.m = p.m / (a * a);
          return one(check_relation_identity(hydrogen_composite_relation(p, n), test_family(id, heavy, fam),
                                             tol.relation));
        }));
        tasks.push_back(guarded_task("hydrogen.composite_mapping", id, p, n, [=] {
          return one(mapping_report("hydrogen.composite_mapping", id, p, n, check_hydrogen_composite_mapping(p, n), 1,
                                    tol.mapping));
        }));
        tasks.push_back(guarded_task("hydrogen.scaling", id, p, n, [=] {
          return one(mapping_report("hydrogen.scaling", id, p, n,
                                    check_hydrogen_scaling(p, n, hydrogen_alpha(p, n)), 0, tol.scaling));
        }));
      }
      break;
    }
  }
}

}  // namespace detail

/// Runs every check for the selected models and parameter sets.  Rows come
/// back in task order, independent of the number of threads.
inline SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult out;
  std::vector<detail::Task> tasks;
  for (ModelId id : cfg.models) {
    std::vector<ParameterSet> sets;
    if (cfg.params) {
      sets = {*cfg.params};
    } else {
      const auto all = default_parameter_sets(id);
      sets.assign(all.begin(), all.begin() + std::min<std::size_t>(all.size(), cfg.parameter_sets));
    }
    for (const auto& p : sets) {
      validate(id, p);
      detail::add_model_tasks(id, p, cfg, tasks, out.notes);
    }
  }
  for (auto& rows : parallel_map(tasks, cfg.threads))
    for (auto& r : rows) out.reports.push_back(std::move(r));
  return out;
}

}  // namespace intertwine

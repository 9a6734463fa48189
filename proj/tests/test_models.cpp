#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <intertwine/models.hpp>
#include <intertwine/quadrature.hpp>

using namespace intertwine;

namespace {
constexpr auto HO = ModelId::HarmonicOscillator;
constexpr auto CS = ModelId::CalogeroSutherland;
constexpr auto H = ModelId::HydrogenRadial;
constexpr auto RMS = ModelId::RosenMorseSpherical;
constexpr auto RMH = ModelId::RosenMorseHyperbolic;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidParameters;
}
}  // namespace

TEST(Models, EigenvalueExamples) {
  EXPECT_DOUBLE_EQ(eigenvalue(H, {.m = 1, .g = 1, .l = 0}, 0), -0.5);
  EXPECT_DOUBLE_EQ(eigenvalue(RMS, {.g = 2, .l = 0}, 0), -3.0);
  EXPECT_DOUBLE_EQ(eigenvalue(HO, {.m = 1, .omega = 1}, 0), 0.5);
  EXPECT_DOUBLE_EQ(eigenvalue(CS, {.g = 2}, 3), 12.5);
  EXPECT_DOUBLE_EQ(eigenvalue(RMH, {.g = 9, .l = 0}, 1), -4.0 - 20.25);
}

TEST(Models, BoundStateCounts) {
  EXPECT_EQ(bound_state_count(RMH, {.g = 9, .l = 0}), 2);
  EXPECT_EQ(bound_state_count(RMH, {.g = 1, .l = 0}), 0);
  EXPECT_EQ(bound_state_count(RMH, {.g = 30, .l = 1}), 4);  // sqrt(30) - 2 = 3.48
  EXPECT_EQ(bound_state_count(H, {.m = 1, .g = 1, .l = 0}), std::nullopt);
  EXPECT_EQ(bound_state_count(HO, {}), std::nullopt);
  EXPECT_EQ(kind_of([] { eigenvalue(RMH, {.g = 9, .l = 0}, 2); }), ErrorKind::IndexOutOfSpectrum);
  EXPECT_EQ(kind_of([] { eigenfunction(RMH, {.g = 9, .l = 0}, 2); }), ErrorKind::IndexOutOfSpectrum);
}

TEST(Models, ParameterValidation) {
  EXPECT_EQ(kind_of([] { validate(H, {.m = 1, .g = 1, .l = 0.5}); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { validate(RMH, {.g = 3, .l = 1}); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { validate(CS, {.g = 0}); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { validate(HO, {.m = -1}); }), ErrorKind::InvalidParameters);
  EXPECT_NO_THROW(validate(RMH, {.g = 4, .l = 1}));
  EXPECT_NO_THROW(validate(RMS, {.g = 0, .l = 0.3}));
}

TEST(Models, HarmonicGroundStateIsEvenGaussian) {
  const ParameterSet p{.m = 2, .omega = 0.5};
  const EigenState s = eigenfunction(HO, p, 0);
  EXPECT_NEAR(s(0.0, 1).derivative(1), 0.0, 1e-15);
  for (double x : {0.3, 1.1, 2.5})
    EXPECT_NEAR(s.value(x) / s.value(0.0), std::exp(-0.5 * p.m * p.omega * x * x), 1e-14);
}

TEST(Models, HydrogenGroundStateIsPureExponential) {
  const ParameterSet p{.m = 1, .g = 1.5, .l = 0};
  const EigenState s = eigenfunction(H, p, 0);
  for (double r : {0.2, 1.0, 4.0}) EXPECT_NEAR(s.value(r) / s.value(1.0), std::exp(-p.g * (r - 1.0)), 1e-13);
  // normalized in the radial measure: 4 g^3 for the density exp(-2 g r) r^2
  EXPECT_NEAR(s.value(1.0) * s.value(1.0), 4.0 * std::pow(p.g, 3) * std::exp(-2.0 * p.g), 1e-12);
}

TEST(Models, SphericalRosenMorseGroundStateIsRealPrefactor) {
  const ParameterSet p{.g = 2, .l = 0.5};
  const EigenState s = eigenfunction(RMS, p, 0);
  const double N = p.l + 1.0;
  auto shape = [&](double x) { return std::pow(std::sin(x), N) * std::exp(-p.g * x / N); };
  for (double x : {0.4, 1.5, 2.8}) EXPECT_NEAR(s.value(x) / s.value(1.0), shape(x) / shape(1.0), 1e-13);
  EXPECT_LT(s.imag_ratio(), 1e-10);
}

TEST(Models, EigenstatesAreNormalizedRealAndFirstLobePositive) {
  for (ModelId id : kAllModels) {
    const ParameterSet p = default_parameter_sets(id)[1];
    const int top = std::min(5, bound_state_count(id, p).value_or(6) - 1);
    for (int n = 0; n <= top; ++n) {
      const EigenState s = eigenfunction(id, p, n);
      const DomainSpec d = domain(id);
      const Interval sup = s.support();
      const auto density = [&](double x) { return s.value(x) * s.value(x) * d.weight(x); };
      const QuadratureRule rule = composite_gauss_legendre(sup.lo, sup.hi, 1024, 20);
      EXPECT_NEAR(rule.integrate(density), 1.0, 1e-10) << model_name(id) << " n=" << n;
      EXPECT_LT(s.imag_ratio(), 1e-10);
      const double probe = sup.lo + 1e-3 * sup.length();
      EXPECT_GT(s.value(probe), 0.0) << model_name(id) << " n=" << n;
    }
  }
}

TEST(Models, HamiltonianOnSimpleFunctions) {
  const ParameterSet ho{.m = 2, .omega = 3};
  const Field one = Field::constant(1.0);
  for (double x : {-1.0, 0.5, 2.0}) EXPECT_NEAR(apply_hamiltonian(HO, ho, one).value(x), 0.5 * 2 * 9 * x * x, 1e-13);

  const ParameterSet hy{.m = 2, .g = 1.5, .l = 2};
  const Field r = Field::coordinate();
  for (double x : {0.3, 1.0, 7.0}) {
    const double want = (-2.0 / x + 6.0 / x - 2.0 * hy.g) / (2.0 * hy.m);
    EXPECT_NEAR(apply_hamiltonian(H, hy, r).value(x), want, 1e-13);
  }
}

TEST(Models, HamiltonianRejectsSingularPoints) {
  const Field f = Field::constant(1.0);
  EXPECT_EQ(kind_of([&] { apply_hamiltonian(H, {.m = 1, .g = 1}, f).value(0.0); }), ErrorKind::EvaluationAtSingularity);
  EXPECT_EQ(kind_of([&] { apply_hamiltonian(RMS, {.g = 1}, f).value(std::numbers::pi); }),
            ErrorKind::EvaluationAtSingularity);
  EXPECT_EQ(kind_of([&] { apply_hamiltonian(CS, {.g = 2}, f).value(0.0); }), ErrorKind::EvaluationAtSingularity);
  EXPECT_NO_THROW(apply_hamiltonian(HO, {}, f).value(0.0));
}

TEST(Models, EigenpairHoldsPointwise) {
  for (ModelId id : kAllModels) {
    const ParameterSet p = default_parameter_sets(id)[0];
    const int top = std::min(4, bound_state_count(id, p).value_or(5) - 1);
    for (int n = 0; n <= top; ++n) {
      const EigenState s = eigenfunction(id, p, n);
      const Field res = apply_hamiltonian(id, p, s.field()) - s.energy() * s.field();
      const Interval sup = s.support();
      for (int i = 1; i < 50; ++i) {
        const double x = sup.lo + sup.length() * i / 50.0;
        EXPECT_LT(std::abs(res.value(x)), 1e-9 * std::max(1.0, std::abs(s.energy()))) << model_name(id) << " n=" << n;
      }
    }
  }
}

TEST(Models, ParameterFlowExamples) {
  const ParameterFlow h = parameter_flow(H, {.m = 1, .g = 1, .l = 0}, 0);
  EXPECT_DOUBLE_EQ(h.shifted.g, 0.5);
  EXPECT_DOUBLE_EQ(h.epsilon, 0.0);
  EXPECT_DOUBLE_EQ(h.energy_shifted, -0.125);
  EXPECT_DOUBLE_EQ(h.q.value(3.0), 2.0);

  const ParameterFlow s = parameter_flow(RMS, {.g = 2, .l = 0}, 0);
  EXPECT_DOUBLE_EQ(s.shifted.g, 1.0);
  EXPECT_DOUBLE_EQ(s.epsilon, 3.0);
  EXPECT_NEAR(s.q.value(0.7), -2.0 * std::cos(0.7), 1e-15);

  const ParameterFlow y = parameter_flow(RMH, {.g = 9, .l = 0}, 0);
  EXPECT_DOUBLE_EQ(y.shifted.g, 4.5);
  EXPECT_DOUBLE_EQ(y.epsilon, -3.0);
  EXPECT_NEAR(y.q.value(0.7), -2.0 * std::cosh(0.7), 1e-15);

  EXPECT_EQ(kind_of([] { parameter_flow(HO, {}, 0); }), ErrorKind::UnsupportedModel);
  EXPECT_EQ(kind_of([] { parameter_flow(CS, {.g = 2}, 0); }), ErrorKind::UnsupportedModel);
}

TEST(Models, SupportCoversPolynomialGrowth) {
  // the envelope drops by 1e-18; the polynomial factor costs a few digits of that
  const ParameterSet p{.m = 1, .g = 1.5, .l = 3};
  const EigenState s = eigenfunction(H, p, 9);
  const Interval sup = s.support();
  double peak = 0.0;
  for (int i = 1; i < 4000; ++i) peak = std::max(peak, std::abs(sup.hi * i / 4000.0 * s.value(sup.hi * i / 4000.0)));
  EXPECT_LT(std::abs(sup.hi * s.value(sup.hi)), 1e-13 * peak);
}

TEST(Models, HyperbolicClosedFormStaysFiniteFarOut) {
  const EigenState s = eigenfunction(RMH, {.g = 50, .l = 0.5}, 5);
  EXPECT_TRUE(std::isfinite(s.value(200.0)));
  EXPECT_TRUE(std::isfinite(s(800.0, 2).derivative(2)));
  EXPECT_TRUE(std::isfinite(apply_hamiltonian(RMH, {.g = 50, .l = 0.5}, s.field()).value(800.0)));
}

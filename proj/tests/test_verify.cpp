#include <cmath>

#include <gtest/gtest.h>

#include <intertwine/verify.hpp>

using namespace intertwine;

namespace {
constexpr auto HO = ModelId::HarmonicOscillator;
constexpr auto CS = ModelId::CalogeroSutherland;
constexpr auto H = ModelId::HydrogenRadial;
constexpr auto RMS = ModelId::RosenMorseSpherical;
constexpr auto RMH = ModelId::RosenMorseHyperbolic;

TestFunctionFamily flowed_family(ModelId id, const ParameterSet& p, int n, std::uint64_t seed = 0) {
  return test_family(id, parameter_flow(id, p, n).shifted, {6, 4, seed});
}
}  // namespace

TEST(Verify, TestFamilyLayout) {
  const TestFunctionFamily tf = test_family(RMH, {.g = 9, .l = 0}, {6, 3, 1});
  ASSERT_EQ(tf.members.size(), 5u);  // two bound states plus three combinations
  EXPECT_EQ(tf.members[1].name, "psi_1");
  EXPECT_EQ(tf.members[4].name, "random_2");
  EXPECT_EQ(tf.grid.size(), 241u);
  const Interval s = support_up_to(RMH, {.g = 9, .l = 0}, 1);
  EXPECT_NEAR(tf.grid.front() - s.lo, kInteriorMargin * s.length(), 1e-15 * s.length());
  EXPECT_THROW(test_family(RMH, {.g = 1, .l = 0}), Error);
}

TEST(Verify, IntertwiningHoldsOnFlowedFamilies) {
  for (ModelId id : {H, RMS, RMH}) {
    for (const ParameterSet& p : default_parameter_sets(id)) {
      const int top = std::min(3, bound_state_count(id, p).value_or(5) - 2);
      for (int n = 0; n <= top; ++n) {
        const VerificationReport r = check_relation_identity(intertwining_relation(id, p, n), flowed_family(id, p, n), 1e-8);
        EXPECT_TRUE(r.pass()) << model_name(id) << " g=" << p.g << " n=" << n;
      }
    }
  }
}

TEST(Verify, ResidualOfZeroFunctionIsZero) {
  const RelationSpec spec = intertwining_relation(H, {.m = 1, .g = 1, .l = 0}, 1);
  EXPECT_EQ(relation_residual(spec, Field::constant(0.0), interior_grid({0.0, 20.0}, 50)), 0.0);
}

TEST(Verify, HalvedMarginKeepsRelationsGreen) {
  const ParameterSet p{.m = 1, .g = 1, .l = 1};
  const RelationSpec spec = intertwining_relation(H, p, 2);
  const TestFunctionFamily tf = flowed_family(H, p, 2);
  const Interval s = support_up_to(H, parameter_flow(H, p, 2).shifted, 5);
  std::vector<double> grid = tf.grid;
  grid.front() = s.lo + 0.5 * kInteriorMargin * s.length();
  grid.back() = s.hi - 0.5 * kInteriorMargin * s.length();
  for (const auto& m : tf.members) EXPECT_LT(relation_residual(spec, m.f, grid), 1e-8) << m.name;
}

TEST(Verify, DifferenceOfSidesIsLinear) {
  const ParameterSet p{.g = 3, .l = 0.5};
  const RelationSpec spec = intertwining_relation(RMS, p, 1);
  const TestFunctionFamily tf = flowed_family(RMS, p, 1);
  const Field f = tf.members[1].f, g = tf.members[5].f;
  const double a = 0.37, b = -1.9;
  const Field combo = a * f + b * g;
  auto diff = [&](const Field& u, double x) { return spec.lhs(u).value(x) - spec.rhs(u).value(x); };
  for (double x : {0.4, 1.3, 2.6}) {
    const double whole = diff(combo, x), parts = a * diff(f, x) + b * diff(g, x);
    const double scale = std::max(1.0, std::abs(spec.lhs(combo).value(x)));
    EXPECT_LT(std::abs(whole - parts), 1e-10 * scale);
  }
}

TEST(Verify, RandomCombinationsPassForTenSeeds) {
  const ParameterSet p{.m = 0.5, .g = 2, .l = 0};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const VerificationReport r = check_relation_identity(intertwining_relation(H, p, 1), flowed_family(H, p, 1, seed), 1e-8);
    EXPECT_TRUE(r.pass()) << "seed " << seed;
  }
}

TEST(Verify, PerturbedCoefficientBreaksTheRelation) {
  const ParameterSet p{.m = 1, .g = 1, .l = 0};
  const auto spec = intertwining_relation(H, p, 1, CoefficientPerturbation{1, 1e-3});
  EXPECT_FALSE(check_relation_identity(spec, flowed_family(H, p, 1), 1e-8).pass());
}

TEST(Verify, EnergyChainExamples) {
  const auto h = check_energy_chain(H, {.m = 1, .g = 1, .l = 0}, 0);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_DOUBLE_EQ(h[0].value("energy_next_level"), -0.125);
  EXPECT_DOUBLE_EQ(h[0].value("flowed_energy_plus_offset"), -0.125);
  EXPECT_DOUBLE_EQ(check_energy_chain(RMS, {.g = 2, .l = 0}, 0)[0].value("energy_next_level"), 3.0);
  const auto y = check_energy_chain(RMH, {.g = 9, .l = 0}, 10);
  ASSERT_EQ(y.size(), 1u);  // only the 0 -> 1 step stays inside the bound spectrum
  EXPECT_DOUBLE_EQ(y[0].value("flowed_energy_plus_offset"), -24.25);
  for (ModelId id : {H, RMS, RMH})
    for (const auto& p : default_parameter_sets(id))
      for (const auto& r : check_energy_chain(id, p, 10)) EXPECT_TRUE(r.pass());
}

TEST(Verify, MappingRaisesByOneLevel) {
  for (ModelId id : {H, RMS, RMH}) {
    const ParameterSet p = default_parameter_sets(id)[1];
    const MappingCheck mc = check_mapping(id, p, 0);
    EXPECT_EQ(mc.m, 1);
    EXPECT_LT(mc.rel_residual, 1e-8) << model_name(id);
    EXPECT_GT(mc.overlap, 1.0 - 1e-12);
    EXPECT_NEAR(mc.rayleigh_energy, mc.target_energy, 1e-8 * std::max(1.0, std::abs(mc.target_energy)));
  }
}

TEST(Verify, MappingErrors) {
  const ParameterSet ho{.m = 1, .omega = 1};
  const EigenState g0 = eigenfunction(HO, ho, 0);
  try {
    check_mapping(ho_ladder(Ladder::Lower, ho).op(), g0.field(), 0, g0.support(), HO, ho, g0.energy() - ho.omega);
    FAIL() << "expected DegenerateImage";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateImage);
  }
  try {
    check_mapping(RMH, {.g = 9, .l = 0}, 1);
    FAIL() << "expected TargetOutOfSpectrum";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TargetOutOfSpectrum);
  }
}

TEST(Verify, HydrogenScalingAndCompositeMapping) {
  const ParameterSet p{.m = 1, .g = 1, .l = 1};
  for (int n = 0; n <= 3; ++n) {
    const MappingCheck s = check_hydrogen_scaling(p, n, hydrogen_alpha(p, n));
    EXPECT_EQ(s.m, 0);
    EXPECT_LT(s.rel_residual, 1e-9);
    const MappingCheck c = check_hydrogen_composite_mapping(p, n);
    EXPECT_EQ(c.m, 1);
    EXPECT_LT(c.rel_residual, 1e-8);
  }
}

TEST(Verify, LadderSpectrumHydrogen) {
  const auto levels = ladder_construct_spectrum(H, {.m = 1, .g = 1, .l = 0}, 5);
  ASSERT_EQ(levels.size(), 6u);
  for (const auto& l : levels) {
    EXPECT_NEAR(l.e_chain, l.e_direct, 1e-14);
    EXPECT_GT(l.overlap, 1.0 - 1e-7) << "n=" << l.n;
  }
  const auto ground = ladder_construct_spectrum(H, {.m = 1, .g = 1, .l = 0}, 0);
  ASSERT_EQ(ground.size(), 1u);
  EXPECT_DOUBLE_EQ(ground[0].overlap, 1.0);
  EXPECT_THROW(ladder_construct_spectrum(RMH, {.g = 9, .l = 0}, 2), Error);
}

TEST(Verify, LadderSpectrumOtherModels) {
  for (ModelId id : {HO, CS, RMS, RMH}) {
    const ParameterSet p = default_parameter_sets(id)[1];
    const int N = std::min(4, bound_state_count(id, p).value_or(5) - 1);
    for (const auto& r : spectrum_reports(id, p, ladder_construct_spectrum(id, p, N)))
      EXPECT_TRUE(r.pass()) << model_name(id) << " n=" << r.n;
  }
}

TEST(Verify, CalogeroSutherlandShapeInvariance) {
  const ParameterSet p{.g = 1.5};
  const VerificationReport r = check_cs_shape_invariance(p, test_family(CS, p));
  EXPECT_TRUE(r.pass());
  EXPECT_NEAR(r.value("epsilon"), 0.0, 1e-9);
  // a wrong partner leaves a non-constant remainder
  try {
    check_shape_invariance(cs_H_minus(p.g), cs_H_plus(p.g + 0.5), test_family(CS, p), 2.0);
    FAIL() << "expected NonConstantEpsilon";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConstantEpsilon);
  }
}

TEST(Verify, ClosureAndAnnihilation) {
  const ParameterSet cs{.g = 2};
  EXPECT_TRUE(check_closure(cs, test_family(CS, cs)).pass());
  const ParameterSet ho{.m = 2, .omega = 0.5};
  const TestFunctionFamily tf = test_family(HO, ho, {1, 0, 0});
  EXPECT_LT(annihilation_ratio(ho_ladder(Ladder::Lower, ho).op(), tf.members[0].f, tf.grid), 1e-10);
  EXPECT_GT(annihilation_ratio(ho_ladder(Ladder::Raise, ho).op(), tf.members[0].f, tf.grid), 0.1);
}

TEST(Verify, EigenpairsOfEveryModel) {
  for (ModelId id : kAllModels) {
    for (const auto& r : check_eigenpairs(id, default_parameter_sets(id)[2], 6))
      EXPECT_TRUE(r.pass()) << model_name(id) << " n=" << r.n;
  }
}

TEST(Verify, SuiteRowsDoNotDependOnThreadCount) {
  SuiteConfig cfg;
  cfg.models = {CS, RMH};
  cfg.parameter_sets = 1;
  cfg.n_max = 3;
  cfg.threads = 1;
  const SuiteResult a = run_suite(cfg);
  cfg.threads = 3;
  const SuiteResult b = run_suite(cfg);
  ASSERT_EQ(a.reports.size(), b.reports.size());
  for (std::size_t i = 0; i < a.reports.size(); ++i) EXPECT_EQ(to_json(a.reports[i]), to_json(b.reports[i]));
  EXPECT_TRUE(a.pass());
  ASSERT_EQ(a.notes.size(), 1u);
  EXPECT_EQ(a.notes[0], "rm-hyp g=9 l=0: bound spectrum has 2 levels; checks truncated at n=1");
}

TEST(Verify, SuiteTurnsExceptionsIntoFailedRows) {
  const auto task = detail::guarded_task("x", HO, {}, 3, []() -> std::vector<VerificationReport> {
    throw Error(ErrorKind::ChainBreak, "boom");
  });
  const auto rows = task();
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].failed_hard);
  EXPECT_FALSE(rows[0].pass());
  EXPECT_EQ(rows[0].note, "ChainBreak: boom");
}

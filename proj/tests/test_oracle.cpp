#include <cmath>

#include <gtest/gtest.h>

#include <intertwine/oracle.hpp>

using namespace intertwine;

namespace {
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

TEST(Oracle, HarmonicOscillatorLowestFour) {
  const ParameterSet p{.m = 1, .omega = 1};
  const OracleResult r = fd_eigensolve(ModelId::HarmonicOscillator, p, 4);
  ASSERT_EQ(r.eigenvalues.size(), 4u);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(r.eigenvalues[n], n + 0.5, 1e-6);
  EXPECT_FALSE(r.count_below_threshold.has_value());
  for (const auto& row : compare_with_closed_form(ModelId::HarmonicOscillator, p, 4)) {
    EXPECT_LT(row.value("one_minus_overlap"), 1e-5);
    EXPECT_TRUE(row.pass()) << "n=" << row.n;
  }
}

TEST(Oracle, HydrogenLowestThree) {
  const ParameterSet p{.m = 1, .g = 1, .l = 0};
  const OracleResult r = fd_eigensolve(ModelId::HydrogenRadial, p, 3);
  for (int n = 0; n < 3; ++n) {
    const double exact = -0.5 / ((n + 1.0) * (n + 1.0));
    EXPECT_LT(std::abs(r.eigenvalues[n] - exact) / std::abs(exact), 1e-5) << "n=" << n;
  }
}

TEST(Oracle, HyperbolicRosenMorseCountsTwoBoundStates) {
  const auto rows = compare_with_closed_form(ModelId::RosenMorseHyperbolic, {.g = 9, .l = 0}, 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows.back().relation_id, "oracle.bound_state_count");
  EXPECT_EQ(rows.back().value("finite_difference_count"), 2.0);
  for (const auto& r : rows) EXPECT_TRUE(r.pass());
}

TEST(Oracle, SecondOrderOnCoarseGrids) {
  // a factor 8 in resolution shrinks a second-order error by about 64
  const ParameterSet p{.m = 1, .omega = 1};
  const OracleResult r = fd_eigensolve(ModelId::HarmonicOscillator, p, 1, {{64, 512}, std::nullopt});
  const double e64 = std::abs(r.level_eigenvalues[0][0] - 0.5);
  const double e512 = std::abs(r.level_eigenvalues[1][0] - 0.5);
  EXPECT_NEAR(e64 / e512, 64.0, 6.0);
  const double order = observed_order(r.spacings, {e64, e512});
  EXPECT_NEAR(order, 2.0, 0.05);
}

TEST(Oracle, ErrorKinds) {
  const ParameterSet ho{.m = 1, .omega = 1};
  EXPECT_EQ(kind_of([&] { fd_eigensolve(ModelId::HarmonicOscillator, ho, 0); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { fd_eigensolve(ModelId::HarmonicOscillator, ho, 13); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { fd_eigensolve(ModelId::HarmonicOscillator, ho, 2, {{32, 64}, std::nullopt}); }),
            ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { fd_eigensolve(ModelId::HarmonicOscillator, ho, 2, {{256}, std::nullopt}); }),
            ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { fd_eigensolve(ModelId::RosenMorseHyperbolic, {.g = 9, .l = 0}, 3); }),
            ErrorKind::IndexOutOfSpectrum);
  EXPECT_EQ(kind_of([&] { fd_eigensolve(ModelId::HarmonicOscillator, ho, 1, {{256, 512}, Interval{-1.0, 1.0}}); }),
            ErrorKind::TruncationTooTight);
  EXPECT_EQ(kind_of([] { fd_eigensolve(ModelId::HydrogenRadial, {.m = 1, .g = 1}, 1, {{256, 512}, Interval{-1.0, 5.0}}); }),
            ErrorKind::InvalidParameters);
}

TEST(Oracle, PhysicalWallsAreNotTruncation) {
  // the box ends are the true domain ends, so a squeezed state is not an error
  const auto rows = compare_with_closed_form(ModelId::CalogeroSutherland, {.g = 1}, 3);
  for (const auto& r : rows) EXPECT_TRUE(r.pass()) << "n=" << r.n;
}

TEST(Oracle, ExtrapolationErrorEstimatesAreMostlyHonest) {
  int within = 0, total = 0;
  for (ModelId id : kAllModels) {
    const auto sets = default_parameter_sets(id);
    for (int s = 0; s < 3; ++s) {
      const int k = std::min(4, bound_state_count(id, sets[s]).value_or(4));
      for (const auto& r : compare_with_closed_form(id, sets[s], k)) {
        if (r.relation_id != "oracle.finite_difference_eigenpair") continue;
        within += r.value("within_estimate") > 0.5;
        ++total;
      }
    }
  }
  EXPECT_GE(within, 0.95 * total) << within << " of " << total;
}

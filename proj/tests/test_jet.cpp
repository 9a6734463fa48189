#include <cmath>

#include <gtest/gtest.h>

#include <intertwine/jet.hpp>

using namespace intertwine;

TEST(Jet, VariableHasUnitSlope) {
  const RealJet x = RealJet::variable(0.3, 3);
  EXPECT_DOUBLE_EQ(x.value(), 0.3);
  EXPECT_DOUBLE_EQ(x.derivative(1), 1.0);
  EXPECT_DOUBLE_EQ(x.derivative(2), 0.0);
}

TEST(Jet, ProductAndQuotientFollowLeibniz) {
  const RealJet x = RealJet::variable(0.7, 4);
  const RealJet f = x * x * x;
  EXPECT_NEAR(f.derivative(1), 3 * 0.49, 1e-15);
  EXPECT_NEAR(f.derivative(2), 6 * 0.7, 1e-14);
  EXPECT_NEAR(f.derivative(3), 6.0, 1e-14);
  EXPECT_NEAR(f.derivative(4), 0.0, 1e-14);

  const RealJet g = 1.0 / x;
  EXPECT_NEAR(g.derivative(1), -1.0 / (0.7 * 0.7), 1e-13);
  EXPECT_NEAR(g.derivative(2), 2.0 / std::pow(0.7, 3), 1e-12);
  EXPECT_NEAR(g.derivative(3), -6.0 / std::pow(0.7, 4), 1e-11);
}

TEST(Jet, ElementaryFunctionsMatchClosedDerivatives) {
  const double x0 = 0.4;
  const RealJet x = RealJet::variable(x0, 4);
  const RealJet e = exp(2.0 * x);
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(e.derivative(k), std::pow(2.0, k) * std::exp(2 * x0), 1e-12);

  const RealJet s = sin(x), c = cos(x);
  EXPECT_NEAR(s.derivative(1), std::cos(x0), 1e-15);
  EXPECT_NEAR(s.derivative(2), -std::sin(x0), 1e-15);
  EXPECT_NEAR(c.derivative(3), std::sin(x0), 1e-14);

  const RealJet sh = sinh(x), ch = cosh(x);
  EXPECT_NEAR(sh.derivative(3), std::cosh(x0), 1e-14);
  EXPECT_NEAR(ch.derivative(4), std::cosh(x0), 1e-13);

  const RealJet l = log(x);
  EXPECT_NEAR(l.derivative(1), 1.0 / x0, 1e-14);
  EXPECT_NEAR(l.derivative(2), -1.0 / (x0 * x0), 1e-13);
  EXPECT_NEAR(l.derivative(3), 2.0 / std::pow(x0, 3), 1e-12);
}

TEST(Jet, PowerAgreesWithExpLogAndIntegerPower) {
  const RealJet x = RealJet::variable(1.3, 5);
  const RealJet a = pow(x, 2.5), b = exp(2.5 * log(x));
  for (int k = 0; k <= 5; ++k) EXPECT_NEAR(a.derivative(k), b.derivative(k), 1e-12 * std::max(1.0, std::abs(b.derivative(k))));

  const RealJet z = RealJet::variable(0.0, 4);
  const RealJet cube = ipow(z, 3);
  EXPECT_DOUBLE_EQ(cube.derivative(3), 6.0);
  EXPECT_DOUBLE_EQ(cube.derivative(2), 0.0);
}

TEST(Jet, ComposeAppliesChainRule) {
  // outer g(u) = u^2 at u0 = sin(x0): g' = 2u, g'' = 2
  const double x0 = 0.9;
  const RealJet u = sin(RealJet::variable(x0, 2));
  const double outer[] = {u.value() * u.value(), 2.0 * u.value(), 2.0};
  const RealJet r = compose<double>(outer, u);
  const RealJet direct = u * u;
  for (int k = 0; k <= 2; ++k) EXPECT_NEAR(r.derivative(k), direct.derivative(k), 1e-14);
}

TEST(Jet, DifferentiatedAndScaled) {
  const RealJet x = RealJet::variable(0.5, 3);
  const RealJet f = exp(x);
  const RealJet d = f.differentiated();
  EXPECT_EQ(d.order(), 2);
  EXPECT_NEAR(d.derivative(2), std::exp(0.5), 1e-14);

  // d/dx f(alpha x) = alpha f'(alpha x)
  const RealJet s = exp(RealJet::variable(0.5 * 3.0, 3)).scaled(3.0);
  EXPECT_NEAR(s.derivative(1), 3.0 * std::exp(1.5), 1e-13);
  EXPECT_NEAR(s.derivative(2), 9.0 * std::exp(1.5), 1e-12);
}

TEST(Jet, ComplexArithmetic) {
  const ComplexJet z = ComplexJet::variable({0.2, 0.1}, 2);
  const ComplexJet w = z * z;
  EXPECT_NEAR(std::abs(w.derivative(1) - 2.0 * std::complex<double>(0.2, 0.1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w.derivative(2) - 2.0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(real_part(to_complex(RealJet::variable(1.0, 1))).value(), 1.0);
}

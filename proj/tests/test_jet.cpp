#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "biharm/jet.hpp"

using namespace biharm;

namespace {

RealJet X(double x, int n = 4) { return RealJet::variable(x, 0, n); }
RealJet Y(double y, int n = 4) { return RealJet::variable(y, 1, n); }

}  // namespace

TEST(Jet, ProductOfCoordinates) {
  const RealJet f = X(2.0) * Y(3.0);
  EXPECT_DOUBLE_EQ(f.value(), 6.0);
  EXPECT_DOUBLE_EQ(f.partial(1, 0), 3.0);
  EXPECT_DOUBLE_EQ(f.partial(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(f.partial(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(f.partial(2, 0), 0.0);
}

TEST(Jet, ExpDerivativesAllEqual) {
  const RealJet f = exp(X(0.7));
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(f.partial(k, 0), std::exp(0.7), 1e-13);
}

TEST(Jet, SinCosChain) {
  // sin(x*y): d^2/dx dy = cos(xy) - xy sin(xy)
  const double x = 0.3, y = -1.2;
  const RealJet f = sin(X(x) * Y(y));
  EXPECT_NEAR(f.partial(1, 1), std::cos(x * y) - x * y * std::sin(x * y), 1e-14);
  // d^4/dx^4 = y^4 sin(xy)
  EXPECT_NEAR(f.partial(4, 0), std::pow(y, 4) * std::sin(x * y), 1e-13);
}

TEST(Jet, LogPowSqrt) {
  const RealJet x = X(2.0);
  EXPECT_NEAR(log(x).partial(3, 0), 2.0 / 8.0, 1e-14);
  EXPECT_NEAR(pow(x, 3.0).partial(2, 0), 12.0, 1e-13);
  EXPECT_NEAR(sqrt(x).partial(1, 0), 0.5 / std::sqrt(2.0), 1e-14);
  // integer powers of negative numbers
  EXPECT_NEAR(pow(X(-2.0), 2.0).partial(1, 0), -4.0, 1e-14);
}

TEST(Jet, Reciprocal) {
  const RealJet r = 1.0 / (X(1.0) + Y(1.0));
  // 1/s, s = x + y = 2 : d^2/dx dy = 2/s^3
  EXPECT_NEAR(r.partial(1, 1), 2.0 / 8.0, 1e-14);
  EXPECT_NEAR(r.partial(2, 2), 24.0 / 32.0, 1e-13);
}

TEST(Jet, InverseFunctions) {
  const double x = 0.4;
  EXPECT_NEAR(asin(X(x)).value(), std::asin(x), 1e-15);
  EXPECT_NEAR(asin(X(x)).partial(1, 0), 1.0 / std::sqrt(1 - x * x), 1e-14);
  EXPECT_NEAR(asinh(X(x)).partial(2, 0), -x / std::pow(1 + x * x, 1.5), 1e-14);
  EXPECT_NEAR(atan(X(x)).partial(3, 0), (6 * x * x - 2) / std::pow(1 + x * x, 3), 1e-13);
}

TEST(Jet, DerivativeLowersOrder) {
  const RealJet f = X(1.0) * X(1.0) * Y(2.0);
  const RealJet fx = f.derivative(0);
  EXPECT_EQ(fx.order(), 3);
  EXPECT_DOUBLE_EQ(fx.value(), 4.0);
  EXPECT_DOUBLE_EQ(fx.partial(1, 1), 2.0);
}

TEST(Jet, MixedOrdersTruncate) {
  const RealJet a = X(1.0, 2);
  const RealJet b = Y(1.0, 4);
  EXPECT_EQ((a * b).order(), 2);
  EXPECT_EQ((a + b).order(), 2);
}

TEST(Jet, ComposeMatchesDirect) {
  // g(u, v) = u^2 v about (1, 2); u = x + y, v = x y about (0.5, 0.5)
  const RealJet u = X(0.5) + Y(0.5);
  const RealJet v = X(0.5) * Y(0.5);
  const RealJet direct = u * u * v;
  const RealJet U = RealJet::variable(1.0, 0), V = RealJet::variable(0.25, 1);
  const RealJet g = U * U * V;
  const RealJet comp = compose(g, u - 1.0, v - 0.25);
  for (int n = 0; n <= 4; ++n)
    for (int j = 0; j <= n; ++j) EXPECT_NEAR(comp.coeff(n - j, j), direct.coeff(n - j, j), 1e-14);
}

TEST(Wirtinger, ZAndZbar) {
  // w = x + i y  ->  w_z = 1, w_zbar = 0
  const ComplexSeries w = to_wirtinger(X(0.2), Y(0.3));
  EXPECT_NEAR(std::abs(w.partial(1, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w.partial(0, 1)), 0.0, 1e-15);
}

TEST(Wirtinger, SquareModulusLaplacian) {
  // |z|^2 = x^2 + y^2 : d_z d_zbar = 1 (Laplacian / 4)
  const ComplexSeries f = to_wirtinger(X(0.2) * X(0.2) + Y(-0.7) * Y(-0.7));
  EXPECT_NEAR(f.partial(1, 1).real(), 1.0, 1e-14);
  EXPECT_NEAR(f.partial(2, 0).real(), 0.0, 1e-14);
}

TEST(Wirtinger, ConjugationReflects) {
  const RealJet x = X(0.3), y = Y(0.4);
  const RealJet re = x * x - y, im = sin(x * y);
  const ComplexSeries w = to_wirtinger(re, im);
  const ComplexSeries wbar = to_wirtinger(re, -im);
  const ComplexSeries c = conjugate(w);
  for (int n = 0; n <= 4; ++n)
    for (int j = 0; j <= n; ++j) EXPECT_NEAR(std::abs(c.coeff(n - j, j) - wbar.coeff(n - j, j)), 0.0, 1e-14);
}

TEST(Wirtinger, RoundTrip) {
  const RealJet x = X(0.3), y = Y(0.4);
  const RealJet re = exp(x) * cos(y), im = x * y * y;
  const auto back = from_wirtinger(to_wirtinger(re, im));
  for (int n = 0; n <= 4; ++n) {
    for (int j = 0; j <= n; ++j) {
      EXPECT_NEAR(back[0].coeff(n - j, j), re.coeff(n - j, j), 1e-14);
      EXPECT_NEAR(back[1].coeff(n - j, j), im.coeff(n - j, j), 1e-14);
    }
  }
}

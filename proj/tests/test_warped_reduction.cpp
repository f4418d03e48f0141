#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "biharm/warped_reduction.hpp"

using namespace biharm;

namespace {

ProfileFunction poly_sq() {
  return ProfileFunction([](const RealJet& x) { return x * x; }, {-1.5, 1.5});
}

// max |L f| over a 101-point grid for L = d^4 + p d^2 + q
double ode_residual(const ProfileFunction& f, double p, double q, double lo, double hi) {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = lo + (hi - lo) * i / 100.0;
    const RealJet F = f.expand(x, 4);
    worst = std::max(worst, std::abs(F.partial(4, 0) + p * F.partial(2, 0) + q * F.value()));
  }
  return worst;
}

}  // namespace

TEST(ProfileOde, LemaireHarmonicFamily) {
  const WarpProfile w = WarpProfile::lemaire(3.0);
  const ProfileFunction f([](const RealJet& x) { return 2.0 * cos(x + 0.3); }, {});
  for (double x : {-1.0, 0.0, 0.7, 2.5}) {
    EXPECT_NEAR(profile_residual(f, w, x), 0.0, 1e-13);
    EXPECT_NEAR(profile_tension(f, w, x), 0.0, 1e-13);
  }
}

TEST(ProfileOde, HelicoidXExp) {
  const WarpProfile w = WarpProfile::helicoid(1.3);
  const ProfileFunction f([](const RealJet& x) { return x * exp(x); }, {});
  for (double x : {-2.0, 0.0, 1.0}) EXPECT_NEAR(profile_residual(f, w, x), 0.0, 1e-12);
}

TEST(ProfileOde, PolynomialCounterexample) {
  const WarpProfile w = WarpProfile::lemaire(3.0);
  for (double x : {0.0, 1.0, 1.4}) EXPECT_NEAR(profile_residual(poly_sq(), w, x), x * x + 4.0, 1e-12);
}

TEST(ProfileOde, DomainChecks) {
  const WarpProfile w = WarpProfile::lemaire(1.0);
  EXPECT_THROW(profile_residual(poly_sq(), w, 2.0), DomainError);   // x outside profile interval
  EXPECT_THROW(profile_residual(poly_sq(), w, 1.2), DomainError);   // f(x) outside |u| < 1
}

TEST(ReducedMap, MatchesProfileOde) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int t = 0; t < 200; ++t) {
    const double k0 = U(rng), k1 = U(rng), k2 = U(rng) * 0.3;
    const ProfileFunction f([k0, k1, k2](const RealJet& x) { return k0 + k1 * sin(x) + k2 * x * x * x; },
                            {-1.0, 1.0});
    const WarpProfile w = (t % 2 == 0) ? WarpProfile::helicoid(1.0 + U(rng) * 0.5) : WarpProfile::lemaire(3.0);
    const double x = 0.9 * U(rng);
    const double ode = profile_residual(f, w, x);
    for (double y : {-5.0, 0.0, 5.0}) {
      const FieldVector2 b = reduced_map_bitension(f, w, {x, y});
      EXPECT_NEAR(b.v1, ode, 1e-9);
      EXPECT_NEAR(b.v2, 0.0, 1e-9);
    }
  }
}

TEST(ReducedMap, Examples) {
  const FieldVector2 h = reduced_map_bitension(helicoid_family(1, 1, 0, 0), WarpProfile::helicoid(1.0), {0.3, 7.0});
  EXPECT_NEAR(h.v1, 0.0, 1e-10);
  EXPECT_NEAR(h.v2, 0.0, 1e-10);
  const FieldVector2 l = reduced_map_bitension(poly_sq(), WarpProfile::lemaire(2.0), {1.0, 0.0});
  EXPECT_NEAR(l.v1, 5.0, 1e-10);
  EXPECT_NEAR(l.v2, 0.0, 1e-12);
  // constant f at a critical point of sigma: totally geodesic
  const ProfileFunction c([](const RealJet& x) { return 0.0 * x; }, {});
  const FieldVector2 z = reduced_map_bitension(c, WarpProfile::helicoid(1.0), {0.2, 0.0});
  EXPECT_EQ(z.v1, 0.0);
  EXPECT_EQ(z.v2, 0.0);
}

TEST(Families, AnnihilateTheirEquations) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int t = 0; t < 10; ++t) {
    const double A = U(rng), B = U(rng), C = U(rng), D = U(rng);
    const ProfileFunction lem = lemaire_family(A, B, C, D, 3.0);
    const double r = std::min(2.0, 0.99 * lem.interval().hi);
    double fmax = 1e-300;
    for (int i = 0; i <= 100; ++i) fmax = std::max(fmax, std::abs(lem(-r + 2 * r * i / 100.0)));
    EXPECT_LE(ode_residual(lem, 2.0, 1.0, -r, r), 1e-9 * std::max(1.0, fmax));
    const ProfileFunction hel = helicoid_family(A, B, C, D);
    EXPECT_LE(ode_residual(hel, -2.0, 1.0, -2, 2), 1e-9 * 20);
    const ProfileFunction cone([&](const RealJet& x) {
      const double k = 1 / std::numbers::sqrt2;
      return (A + B * x) * exp(k * x) + (C + D * x) * exp(-k * x);
    }, {});
    EXPECT_LE(ode_residual(cone, -1.0, 0.25, -2, 2), 1e-9 * 20);
  }
}

TEST(Families, ParameterErrors) {
  EXPECT_THROW(lemaire_family(3, 0, 0, 0, 3), ParameterError);
  EXPECT_THROW(lemaire_family(0, 0, 1, 0, -1), ParameterError);
  EXPECT_NO_THROW(lemaire_family(1, 0, 0.1, 0, 3));
  EXPECT_NEAR(lemaire_family(1, 0, 0.1, 0, 3).interval().hi, 20.0, 1e-12);
  EXPECT_THROW(cone_family(1, 1, 0, 0, {-5, 5}), ParameterError);  // (1 + x) e^{x/sqrt2} vanishes at -1
  EXPECT_NO_THROW(cone_family(1, 1, 0, 0, {0, 4}));
  const ProfileFunction c = cone_family(1, 1, 0, 0, {0, 4});
  EXPECT_NEAR(profile_residual(c, WarpProfile::cone(), 1.0), 0.0, 1e-10);
}

TEST(IdentityFactor, Rational) {
  const IdentityFactor f = identity_factor({IdentityCase::Rational, 1, 1, 0.0, 0.0});
  EXPECT_NEAR(f.y(RealJet::constant(0.5, 0)).value(), -4.0, 1e-15);
  EXPECT_NEAR(f.sigma_squared(RealJet::constant(0.5, 0)).value(), -4 * std::log(0.5), 1e-14);
  EXPECT_NEAR(f.domain.lo, 0.0, 1e-11);
  EXPECT_NEAR(f.domain.hi, 1.0, 1e-11);
}

TEST(IdentityFactor, TrigAndHyperbolic) {
  const IdentityFactor t = identity_factor({IdentityCase::Trigonometric, 2.0, 1, 0.0, 10.0});
  EXPECT_NEAR(t.y(RealJet::constant(0.0, 0)).value(), 0.0, 1e-15);
  EXPECT_NEAR(t.sigma_squared(RealJet::constant(0.0, 0)).value(), 10.0, 1e-15);
  // cos(x) > 0 and c2 > 0: limited by the poles at +-pi/2
  EXPECT_NEAR(t.domain.lo, -std::numbers::pi / 2, 1e-9);
  EXPECT_NEAR(t.domain.hi, std::numbers::pi / 2, 1e-9);

  const IdentityFactorCase bad{IdentityCase::Hyperbolic, 1, 1.0, -1.0, 0.0};
  IdentityFactor h0 = IdentityFactor{};
  EXPECT_THROW(h0 = identity_factor(bad), EmptyDomain);
  const IdentityFactor h = identity_factor({IdentityCase::Hyperbolic, 1, 1.0, -1.0, 4.0});
  EXPECT_NEAR(h.y(RealJet::constant(0.0, 0)).value(), 0.0, 1e-15);
  const double edge = 2 * std::acosh(std::exp(1.0) / 2);
  EXPECT_NEAR(h.domain.hi, edge, 1e-10);
  EXPECT_NEAR(h.domain.lo, -edge, 1e-10);
}

TEST(IdentityFactor, YIsHalfDerivativeOfSigmaSquared) {
  const std::vector<IdentityFactorCase> cases{{IdentityCase::Rational, 1, 1, 0.3, 0},
                                              {IdentityCase::Trigonometric, 1.5, 1, 0.2, 3},
                                              {IdentityCase::Hyperbolic, 1, 2.0, 0.5, 3},
                                              {IdentityCase::Hyperbolic, 1, 0.7, -2.0, 6}};
  for (const auto& c : cases) {
    const IdentityFactor f = identity_factor(c);
    for (int i = 1; i < 20; ++i) {
      const double x = f.domain.lo + (f.domain.hi - f.domain.lo) * i / 20.0;
      const RealJet s2 = f.sigma_squared(RealJet::variable(x, 0, 1));
      EXPECT_NEAR(0.5 * s2.partial(1, 0), f.y(RealJet::constant(x, 0)).value(),
                  1e-10 * (1 + std::abs(s2.partial(1, 0))));
      EXPECT_GT(s2.value(), 0.0);
    }
  }
}

TEST(IdentityFactor, FirstIntegralAndWarpOde) {
  const std::vector<IdentityFactorCase> cases{{IdentityCase::Rational, 1, 1, 0.0, 0},
                                              {IdentityCase::Trigonometric, 2, 1, 0.0, 1},
                                              {IdentityCase::Hyperbolic, 1, 1.0, -1.0, 4}};
  for (const auto& c : cases) {
    const IdentityFactor f = identity_factor(c);
    const double lo = f.domain.lo + 0.05 * (f.domain.hi - f.domain.lo);
    const double hi = f.domain.hi - 0.05 * (f.domain.hi - f.domain.lo);
    double cmin = 1e300, cmax = -1e300;
    for (int i = 0; i <= 50; ++i) {
      const double x = lo + (hi - lo) * i / 50.0;
      const RealJet y = f.y(RealJet::variable(x, 0, 2));
      EXPECT_LE(std::abs(warp_ode_residual(f.y, x, f.domain)), 1e-10 * (1 + std::abs(y.value() * y.partial(1, 0))));
      const double first = y.partial(1, 0) - 0.5 * y.value() * y.value();
      cmin = std::min(cmin, first);
      cmax = std::max(cmax, first);
    }
    EXPECT_LE(cmax - cmin, 1e-9 * (1 + std::abs(cmax)));
  }
}

TEST(WarpOde, SimpleFunctions) {
  const UnivariateFn cst = [](const RealJet& x) { return 0.0 * x + 3.0; };
  const UnivariateFn lin = [](const RealJet& x) { return x; };
  EXPECT_EQ(warp_ode_residual(cst, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(warp_ode_residual(lin, 1.0), -1.0);
  EXPECT_THROW(warp_ode_residual(lin, 5.0, {0, 1}), DomainError);
}

TEST(IdentityFactor, IdentityMapIsBiharmonic) {
  const std::vector<IdentityFactorCase> cases{{IdentityCase::Rational, 1, 1, 0.0, 0},
                                              {IdentityCase::Trigonometric, 2, 1, 0.0, 1},
                                              {IdentityCase::Hyperbolic, 1, 1.0, -1.0, 4}};
  for (const auto& c : cases) {
    const IdentityFactor f = identity_factor(c);
    const WarpProfile w = f.warp();
    const ProfileFunction id([](const RealJet& x) { return x; }, f.domain);
    double tmax = 0.0;
    for (int i = 1; i < 10; ++i) {
      const double x = f.domain.lo + (f.domain.hi - f.domain.lo) * i / 10.0;
      const FieldVector2 b = reduced_map_bitension(id, w, {x, 0.5});
      EXPECT_LE(h_norm(b, w.metric(), {x, 0.5}), 1e-6);
      tmax = std::max(tmax, std::abs(profile_tension(id, w, x)));
    }
    EXPECT_GT(tmax, 1e-3);  // proper
  }
}

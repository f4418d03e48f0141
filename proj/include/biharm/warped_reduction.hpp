#pragma once

// Maps (x, y) -> (f(x), y) into warped products du^2 + sigma^2(u) dv^2,
// their fourth-order profile equation, the closed-form families, and the
// warp factors that make the identity map biharmonic.

#include <functional>
#include <limits>
#include <string>

#include "biharm/errors.hpp"
#include "biharm/geometry.hpp"
#include "biharm/map_calculus.hpp"

namespace biharm {

/// Function of one variable evaluated on jets (only variable 0 is used).
using UnivariateFn = std::function<RealJet(const RealJet&)>;

/// Bound used in place of an infinite interval end.
inline constexpr double kUnbounded = 1e3;

/// Open interval (lo, hi).
struct Interval {
  double lo = -kUnbounded;
  double hi = kUnbounded;

  bool contains(double x) const { return x > lo && x < hi; }
  bool empty() const { return !(lo < hi); }
  std::string to_string() const;
};

class WarpProfile {
 public:
  WarpProfile(std::string name, UnivariateFn sigma_squared, Interval u_range);

  /// sigma^2 = a^2 - u^2 on |u| < a
  static WarpProfile lemaire(double a);
  /// sigma^2 = a^2 + u^2
  static WarpProfile helicoid(double a);
  /// sigma^2 = u^2 / 2 on u > 0 (positive = true) or u < 0
  static WarpProfile cone(bool positive = true);

  const std::string& name() const { return name_; }
  const Interval& interval() const { return range_; }

  RealJet sigma_squared(const RealJet& u) const { return s2_(u); }
  double sigma(double u) const;
  /// (sigma sigma')(u) and its derivative, to the given order in u.
  RealJet sigma_sigma_prime(double u, int order) const;

  Metric2 metric(double v_extent = kUnbounded) const;

 private:
  std::string name_;
  UnivariateFn s2_;
  Interval range_;
};

class ProfileFunction {
 public:
  ProfileFunction(UnivariateFn f, Interval x_range);

  double operator()(double x) const;
  RealJet expand(double x, int order = 4) const;
  const Interval& interval() const { return range_; }
  const UnivariateFn& function() const { return f_; }

  /// The map (x, y) -> (f(x), y).
  SmoothMap2 as_map() const;

 private:
  UnivariateFn f_;
  Interval range_;
};

/// Throws DomainError if f leaves the warp's interval at any of `samples`
/// evenly spaced interior points.
void check_image(const ProfileFunction& f, const WarpProfile& w, int samples = 101);

/// (f'' - sigma'(f) sigma(f))'' - (f'' - sigma'(f) sigma(f)) (sigma' sigma)'(f)
double profile_residual(const ProfileFunction& f, const WarpProfile& w, double x);

/// f'' - sigma'(f) sigma(f): first tension component of the reduced map.
double profile_tension(const ProfileFunction& f, const WarpProfile& w, double x);

/// Full bitension of (f(x), y) from a flat domain, through the general formula.
FieldVector2 reduced_map_bitension(const ProfileFunction& f, const WarpProfile& w, Point2 p);

/// The flat domain used for reduced maps over f's interval.
Metric2 flat_strip(const Interval& x_range);

ProfileFunction lemaire_family(double A, double B, double C, double D, double a);
ProfileFunction helicoid_family(double A, double B, double C, double D);
ProfileFunction cone_family(double A, double B, double C, double D, Interval x_range = {-5.0, 5.0});

enum class IdentityCase { Rational, Trigonometric, Hyperbolic };

const char* to_string(IdentityCase c);

struct IdentityFactorCase {
  IdentityCase tag = IdentityCase::Rational;
  double a = 1.0;   // trigonometric
  double b = 1.0;   // hyperbolic
  double c1 = 0.0;
  double c2 = 0.0;  // ignored in the rational case
  /// Point the validity interval is grown from; NaN picks a default.
  double anchor = std::numeric_limits<double>::quiet_NaN();
};

struct IdentityFactor {
  UnivariateFn sigma_squared;
  UnivariateFn y;  // closed form of (sigma^2 / 2)'
  Interval domain;

  WarpProfile warp() const;
};

/// Closed forms of sigma^2 and y, with the maximal interval around the anchor
/// on which sigma^2 > 0. Throws EmptyDomain when there is none.
IdentityFactor identity_factor(const IdentityFactorCase& c);

/// y'' - y y'
double warp_ode_residual(const UnivariateFn& y, double x, const Interval& domain = {});

}  // namespace biharm

#include "biharm/warped_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace biharm {

namespace {

RealJet var(double x, int order) { return RealJet::variable(x, 0, order); }

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::string Interval::to_string() const { return "(" + num(lo) + ", " + num(hi) + ")"; }

WarpProfile::WarpProfile(std::string name, UnivariateFn sigma_squared, Interval u_range)
    : name_(std::move(name)), s2_(std::move(sigma_squared)), range_(u_range) {
  if (!s2_) throw ParameterError("warp profile needs sigma^2");
  if (range_.empty()) throw ParameterError("warp profile interval is empty");
}

WarpProfile WarpProfile::lemaire(double a) {
  if (!(a > 0.0)) throw ParameterError("lemaire target needs a > 0");
  return WarpProfile("lemaire", [a](const RealJet& u) { return a * a - u * u; }, {-a, a});
}

WarpProfile WarpProfile::helicoid(double a) {
  if (!(a > 0.0)) throw ParameterError("helicoid needs a > 0");
  return WarpProfile("helicoid", [a](const RealJet& u) { return a * a + u * u; }, {});
}

WarpProfile WarpProfile::cone(bool positive) {
  return WarpProfile("cone", [](const RealJet& u) { return 0.5 * (u * u); },
                     positive ? Interval{0.0, kUnbounded} : Interval{-kUnbounded, 0.0});
}

double WarpProfile::sigma(double u) const {
  if (!range_.contains(u)) throw DomainError("u = " + num(u) + " outside warp interval " + range_.to_string());
  const double s2 = s2_(RealJet::constant(u, 0)).value();
  if (!(s2 > 0.0)) throw DomainError("sigma^2 not positive at u = " + num(u));
  return std::sqrt(s2);
}

RealJet WarpProfile::sigma_sigma_prime(double u, int order) const {
  sigma(u);
  return 0.5 * s2_(var(u, order + 1)).derivative(0);
}

Metric2 WarpProfile::metric(double v_extent) const {
  const UnivariateFn s2 = s2_;
  return Metric2::warped(ScalarField2::analytic([s2](const RealJet& u, const RealJet&) { return s2(u); }),
                         {range_.lo, range_.hi, -v_extent, v_extent});
}

ProfileFunction::ProfileFunction(UnivariateFn f, Interval x_range) : f_(std::move(f)), range_(x_range) {
  if (!f_) throw ParameterError("profile needs a function");
  if (range_.empty()) throw ParameterError("profile interval is empty");
}

double ProfileFunction::operator()(double x) const { return f_(RealJet::constant(x, 0)).value(); }

RealJet ProfileFunction::expand(double x, int order) const {
  if (!range_.contains(x)) throw DomainError("x = " + num(x) + " outside profile interval " + range_.to_string());
  return f_(var(x, order));
}

SmoothMap2 ProfileFunction::as_map() const {
  const UnivariateFn f = f_;
  return SmoothMap2::analytic([f](const RealJet& x, const RealJet&) { return f(x); },
                              [](const RealJet&, const RealJet& y) { return y; });
}

void check_image(const ProfileFunction& f, const WarpProfile& w, int samples) {
  const Interval& I = f.interval();
  const double lo = std::max(I.lo, -kUnbounded), hi = std::min(I.hi, kUnbounded);
  for (int k = 1; k <= samples; ++k) {
    const double x = lo + (hi - lo) * k / (samples + 1);
    const double u = f(x);
    if (!w.interval().contains(u)) {
      throw DomainError("profile value " + num(u) + " at x = " + num(x) + " outside " + w.name() + " interval " +
                        w.interval().to_string());
    }
  }
}

namespace {

// E = f'' - (sigma sigma')(f) as a jet in x of order 2, and (sigma sigma')'(f(x)).
struct ReducedTension {
  RealJet e;
  double ss_prime = 0.0;
};

ReducedTension reduced_tension(const ProfileFunction& f, const WarpProfile& w, double x, int order) {
  const RealJet F = f.expand(x, order + 2);
  const double u0 = F.value();
  const RealJet S = w.sigma_sigma_prime(u0, order);
  RealJet dF = F;
  dF.set_coeff(0, 0, 0.0);
  const RealJet S_of_f = compose(S, dF, RealJet(F.order()));
  ReducedTension r;
  r.e = F.derivative(0).derivative(0) - S_of_f;
  r.ss_prime = order >= 1 ? S.partial(1, 0) : 0.0;
  return r;
}

}  // namespace

double profile_residual(const ProfileFunction& f, const WarpProfile& w, double x) {
  const ReducedTension t = reduced_tension(f, w, x, 2);
  return t.e.partial(2, 0) - t.e.value() * t.ss_prime;
}

double profile_tension(const ProfileFunction& f, const WarpProfile& w, double x) {
  return reduced_tension(f, w, x, 0).e.value();
}

Metric2 flat_strip(const Interval& x_range) {
  return Metric2::conformal(ScalarField2::constant(1.0), {x_range.lo, x_range.hi, -kUnbounded, kUnbounded});
}

FieldVector2 reduced_map_bitension(const ProfileFunction& f, const WarpProfile& w, Point2 p) {
  if (!f.interval().contains(p.x)) {
    throw DomainError("x = " + num(p.x) + " outside profile interval " + f.interval().to_string());
  }
  const double u = f(p.x);
  if (!w.interval().contains(u)) throw DomainError("image u = " + num(u) + " outside warp interval");
  return bitension_general(f.as_map(), flat_strip(f.interval()), w.metric(), p);
}

ProfileFunction lemaire_family(double A, double B, double C, double D, double a) {
  if (!(a > 0.0)) throw ParameterError("lemaire family needs a > 0");
  if (!(std::abs(A) < a)) throw ParameterError("lemaire family needs |A| < a");
  Interval I;
  if (C != 0.0) {
    const double r = (a - std::abs(A)) / std::abs(C);
    I = {-std::min(r, kUnbounded), std::min(r, kUnbounded)};
  }
  return ProfileFunction(
      [A, B, C, D](const RealJet& x) { return A * cos(x + B) + C * x * cos(x + D); }, I);
}

ProfileFunction helicoid_family(double A, double B, double C, double D) {
  return ProfileFunction(
      [A, B, C, D](const RealJet& x) { return (A + B * x) * exp(x) + (C + D * x) * exp(-x); }, {-50.0, 50.0});
}

ProfileFunction cone_family(double A, double B, double C, double D, Interval x_range) {
  const double k = 1.0 / std::numbers::sqrt2;
  ProfileFunction f(
      [A, B, C, D, k](const RealJet& x) { return (A + B * x) * exp(k * x) + (C + D * x) * exp(-k * x); }, x_range);
  // f must keep one sign (the apex u = 0 is singular)
  const int n = 4000;
  double prev = f(x_range.lo + (x_range.hi - x_range.lo) / (2.0 * n));
  for (int i = 0; i <= n; ++i) {
    const double x = x_range.lo + (x_range.hi - x_range.lo) * (i + 0.5) / (n + 1);
    const double v = f(x);
    if (v == 0.0 || (v > 0.0) != (prev > 0.0)) {
      throw ParameterError("cone profile vanishes near x = " + num(x) + " inside " + x_range.to_string());
    }
    prev = v;
  }
  return f;
}

const char* to_string(IdentityCase c) {
  switch (c) {
    case IdentityCase::Rational:
      return "rational";
    case IdentityCase::Trigonometric:
      return "trigonometric";
    case IdentityCase::Hyperbolic:
      return "hyperbolic";
  }
  return "rational";
}

WarpProfile IdentityFactor::warp() const { return WarpProfile("identity", sigma_squared, domain); }

namespace {

// Singular points of the closed forms, sorted.
std::vector<double> singular_points(const IdentityFactorCase& c, double near) {
  std::vector<double> s;
  switch (c.tag) {
    case IdentityCase::Rational:
      s.push_back(-c.c1);
      break;
    case IdentityCase::Trigonometric: {
      // a x / 2 + c1 = pi/2 + k pi
      const double t = c.a * near / 2 + c.c1;
      const double k0 = std::floor((t - std::numbers::pi / 2) / std::numbers::pi);
      for (double k = k0 - 1; k <= k0 + 2; ++k) s.push_back((std::numbers::pi / 2 + k * std::numbers::pi - c.c1) * 2 / c.a);
      break;
    }
    case IdentityCase::Hyperbolic:
      if (c.c1 > 0.0) s.push_back(std::log(c.c1) / c.b);
      break;
  }
  std::sort(s.begin(), s.end());
  return s;
}

double default_anchor(const IdentityFactorCase& c) {
  switch (c.tag) {
    case IdentityCase::Rational:
      return -c.c1 + 0.5;
    case IdentityCase::Trigonometric:
      return -2 * c.c1 / c.a;
    case IdentityCase::Hyperbolic:
      // away from the singular point when there is one
      return c.c1 > 0.0 ? std::log(c.c1) / c.b + 1.0 / c.b : 0.0;
  }
  return 0.0;
}

// Last point from `from` towards `to` where g > 0, refined by bisection.
double grow(const std::function<double(double)>& g, double from, double to) {
  const int steps = 4000;
  double inside = from;
  for (int i = 1; i <= steps; ++i) {
    const double x = from + (to - from) * i / steps;
    const double v = (i == steps) ? -1.0 : g(x);
    if (!(v > 0.0)) {
      double lo = inside, hi = x;
      if (i == steps && std::abs(to) >= kUnbounded) return to;
      for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return lo;
    }
    inside = x;
  }
  return to;
}

}  // namespace

IdentityFactor identity_factor(const IdentityFactorCase& c) {
  IdentityFactor out;
  const double c1 = c.c1, c2 = c.c2, a = c.a, b = c.b;
  switch (c.tag) {
    case IdentityCase::Rational:
      out.sigma_squared = [c1](const RealJet& x) { return -4.0 * log(abs(x + c1)); };
      out.y = [c1](const RealJet& x) { return -2.0 / (x + c1); };
      break;
    case IdentityCase::Trigonometric:
      if (a == 0.0) throw ParameterError("trigonometric case needs a != 0");
      out.sigma_squared = [a, c1, c2](const RealJet& x) { return -4.0 * log(abs(cos(0.5 * a * x + c1))) + c2; };
      out.y = [a, c1](const RealJet& x) { return a * tan(0.5 * a * x + c1); };
      break;
    case IdentityCase::Hyperbolic:
      if (b == 0.0) throw ParameterError("hyperbolic case needs b != 0");
      out.sigma_squared = [b, c1, c2](const RealJet& x) {
        return -4.0 * log(abs(exp(0.5 * b * x) - c1 * exp(-0.5 * b * x))) + c2;
      };
      out.y = [b, c1](const RealJet& x) {
        const RealJet e = exp(0.5 * b * x), f = exp(-0.5 * b * x);
        return -b * (e + c1 * f) / (e - c1 * f);
      };
      break;
  }

  const double anchor = std::isnan(c.anchor) ? default_anchor(c) : c.anchor;
  const UnivariateFn s2 = out.sigma_squared;
  auto g = [&s2](double x) {
    try {
      const double v = s2(RealJet::constant(x, 0)).value();
      return std::isfinite(v) ? v : -1.0;
    } catch (const std::domain_error&) {
      return -1.0;
    }
  };
  if (!(g(anchor) > 0.0)) {
    throw EmptyDomain(std::string(to_string(c.tag)) + " case: sigma^2 = " + num(g(anchor)) +
                      " is not positive at the anchor x = " + num(anchor));
  }
  double left = -kUnbounded, right = kUnbounded;
  for (double s : singular_points(c, anchor)) {
    if (s < anchor) left = std::max(left, s);
    if (s > anchor) right = std::min(right, s);
    if (s == anchor) throw EmptyDomain("anchor sits on a singular point");
  }
  const double lo = grow(g, anchor, left);
  const double hi = grow(g, anchor, right);
  out.domain = {lo, hi};
  if (out.domain.empty()) throw EmptyDomain("no interval with sigma^2 > 0 around the anchor");
  return out;
}

double warp_ode_residual(const UnivariateFn& y, double x, const Interval& domain) {
  if (!domain.contains(x)) throw DomainError("x = " + num(x) + " outside " + domain.to_string());
  const RealJet Y = y(var(x, 2));
  return Y.partial(2, 0) - Y.value() * Y.partial(1, 0);
}

}  // namespace biharm

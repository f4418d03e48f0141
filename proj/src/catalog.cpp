#include "biharm/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace biharm {

namespace {

bool is_zero(double v) { return std::abs(v) <= kCoeffZero; }

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// phi_z phi_zbar = (|A1|^2 - |A2|^2 + 2i A1.A2) / 4
std::pair<double, double> conformality(const LinearMapCoeffs& c) {
  return {c.a * c.a + c.b * c.b - c.c * c.c - c.d * c.d, c.a * c.c + c.b * c.d};
}

bool linear_is_harmonic_shape(const LinearMapCoeffs& c) {
  const auto [diff, dot] = conformality(c);
  return is_zero(diff) && is_zero(dot);
}

}  // namespace

SmoothMap2 make_linear_map(const LinearMapCoeffs& c) {
  const double a = c.a, b = c.b, cc = c.c, d = c.d;
  return SmoothMap2::analytic([a, b](const RealJet& x, const RealJet& y) { return a * x + b * y; },
                              [cc, d](const RealJet& x, const RealJet& y) { return cc * x + d * y; });
}

ScalarField2 make_antibianalytic_sigma(double p, double q, Rect domain) {
  if (domain.empty()) throw ParameterError("empty domain for the target factor");
  // extreme values of u^2 + v^2 over the rectangle
  auto clamp0 = [](double lo, double hi) { return lo > 0 ? lo : (hi < 0 ? hi : 0.0); };
  const double nu = clamp0(domain.x_min, domain.x_max), nv = clamp0(domain.y_min, domain.y_max);
  const double fu = std::max(std::abs(domain.x_min), std::abs(domain.x_max));
  const double fv = std::max(std::abs(domain.y_min), std::abs(domain.y_max));
  const double rmin = nu * nu + nv * nv, rmax = fu * fu + fv * fv;
  const double smin = std::min(p + q * rmin, p + q * rmax);
  if (!(smin > 0.0)) {
    throw ParameterError("p + q(u^2 + v^2) with p = " + num(p) + ", q = " + num(q) + " is not positive on " +
                         domain.to_string());
  }
  ScalarField2 s =
      ScalarField2::analytic([p, q](const RealJet& u, const RealJet& v) { return p + q * (u * u + v * v); });
  // sigma_ww must vanish identically; check at the rectangle centre
  const Point2 centre{0.5 * (domain.x_min + domain.x_max), 0.5 * (domain.y_min + domain.y_max)};
  if (std::abs(to_wirtinger(s.expand(centre, 2)).partial(2, 0)) > kCoeffZero) {
    throw ParameterError("target factor is not anti-bianalytic");
  }
  return s;
}

const char* to_string(GeometryTag t) {
  switch (t) {
    case GeometryTag::FlatPlane:
      return "flat";
    case GeometryTag::SphereModel:
      return "sphere";
    case GeometryTag::AntiBianalyticTarget:
      return "antibianalytic";
    case GeometryTag::HyperbolicModel:
      return "hyperbolic";
    case GeometryTag::LemaireTarget:
      return "lemaire";
    case GeometryTag::Helicoid:
      return "helicoid";
    case GeometryTag::Cone:
      return "cone";
  }
  return "flat";
}

NamedGeometry flat_plane(Rect domain) {
  return {GeometryTag::FlatPlane, Metric2::conformal(ScalarField2::constant(1.0), domain)};
}

NamedGeometry sphere_model() {
  return {GeometryTag::SphereModel,
          Metric2::conformal(
              ScalarField2::analytic([](const RealJet& x, const RealJet& y) { return 2.0 / (1.0 + x * x + y * y); }),
              kWideRect)};
}

NamedGeometry antibianalytic_target(double p, double q, Rect domain) {
  return {GeometryTag::AntiBianalyticTarget, Metric2::conformal(make_antibianalytic_sigma(p, q, domain), domain)};
}

NamedGeometry hyperbolic_model() {
  return {GeometryTag::HyperbolicModel,
          Metric2::general(ScalarField2::analytic([](const RealJet&, const RealJet& y) { return exp(-2.0 * y); }),
                           ScalarField2::constant(0.0), ScalarField2::constant(1.0), kWideRect)};
}

NamedGeometry lemaire_target(double a) { return {GeometryTag::LemaireTarget, WarpProfile::lemaire(a).metric()}; }
NamedGeometry helicoid_target(double a) { return {GeometryTag::Helicoid, WarpProfile::helicoid(a).metric()}; }
NamedGeometry cone_target(bool positive) { return {GeometryTag::Cone, WarpProfile::cone(positive).metric()}; }

const char* to_string(SphereLinearClass c) {
  switch (c) {
    case SphereLinearClass::ConstantMap:
      return "ConstantMap";
    case SphereLinearClass::HarmonicConformal:
      return "HarmonicConformal";
    case SphereLinearClass::NotBiharmonic:
      return "NotBiharmonic";
  }
  return "NotBiharmonic";
}

SphereLinearClass sphere_linear_is_biharmonic(const LinearMapCoeffs& c) {
  if (is_zero(c.a) && is_zero(c.b) && is_zero(c.c) && is_zero(c.d)) return SphereLinearClass::ConstantMap;
  if (linear_is_harmonic_shape(c)) return SphereLinearClass::HarmonicConformal;
  return SphereLinearClass::NotBiharmonic;
}

const char* to_string(HyperbolicLinearClass c) {
  switch (c) {
    case HyperbolicLinearClass::BiharmonicFamily_ab0:
      return "BiharmonicFamily_ab0";
    case HyperbolicLinearClass::IdentityBranch:
      return "IdentityBranch";
    case HyperbolicLinearClass::NotBiharmonic:
      return "NotBiharmonic";
  }
  return "NotBiharmonic";
}

HyperbolicLinearResult hyperbolic_linear_is_biharmonic(const LinearMapCoeffs& c) {
  if (is_zero(c.a) && is_zero(c.b)) return {HyperbolicLinearClass::BiharmonicFamily_ab0, !is_zero(c.d)};
  if (is_zero(std::abs(c.a) - 1.0) && is_zero(c.b) && is_zero(c.c) && is_zero(c.d - 1.0)) {
    return {HyperbolicLinearClass::IdentityBranch, false};
  }
  return {HyperbolicLinearClass::NotBiharmonic, false};
}

cplx sphere_linear_residual(const LinearMapCoeffs& c, cplx z) {
  const cplx w(c.a * z.real() + c.b * z.imag(), c.c * z.real() + c.d * z.imag());
  const cplx pz(0.5 * (c.a + c.d), 0.5 * (c.c - c.b));
  const cplx pzb(0.5 * (c.a - c.d), 0.5 * (c.c + c.b));
  const cplx zb = std::conj(z);
  return -2.0 * w * w + 3.0 * zb * w * pzb + 3.0 * z * w * pz - 6.0 * z * zb * pz * pzb;
}

std::array<double, 6> sphere_linear_coefficients(const LinearMapCoeffs& k) {
  const double a = k.a, b = k.b, c = k.c, d = k.d;
  return {-0.5 * a * a - 1.5 * b * b + 0.5 * c * c + 1.5 * d * d,
          2 * a * b - 2 * c * d,
          -1.5 * a * a - 0.5 * b * b + 1.5 * c * c + 0.5 * d * d,
          -a * c - 3 * b * d,
          2 * b * c + 2 * a * d,
          -3 * a * c - b * d};
}

std::array<double, 2> hyperbolic_linear_lhs(const LinearMapCoeffs& k, double x, double y) {
  const double a = k.a, b = k.b, c = k.c, d = k.d;
  const double v = c * x + d * y;
  const double e2y = std::exp(2 * y), e4y2v = std::exp(4 * y - 2 * v), e2y2v = std::exp(2 * y - 2 * v);
  const double em2v = std::exp(-2 * v), em4v = std::exp(-4 * v);
  const double e2y4v = std::exp(2 * y - 4 * v), e4y4v = std::exp(4 * y - 4 * v);
  const double first = (-4 * a * c + 4 * a * c * d) * e2y + 8 * a * a * a * c * e4y2v +
                       (8 * a * b * b * c - 2 * a * a * b + 8 * a * a * b * d) * e2y2v +
                       (8 * b * b * b * d + 2 * b * b * b) * em2v - 2 * b * d - 4 * b * d * d;
  const double second =
      (8 * b * b * d + 8 * b * b * d * d + b * b) * em2v + 8 * a * a * c * c * e4y2v - 2 * b * b * b * b * em4v -
      4 * a * a * b * b * e2y4v - 2 * a * a * a * a * e4y4v +
      (2 * a * a + 4 * b * b * c * c - 4 * a * a * d + 4 * a * a * d * d - 4 * a * b * c + 8 * a * b * c * d) * e2y2v;
  return {first, second};
}

namespace {

double param(const Params& p, const char* name) { return p.at(name); }

LinearMapCoeffs coeffs(const Params& p) {
  return {param(p, "a"), param(p, "b"), param(p, "c"), param(p, "d")};
}

const Rect kUnit{-1.0, 1.0, -1.0, 1.0};

ConformalView self_view(const SmoothMap2& m, const Metric2& dom, const Metric2& tgt, Rect r) {
  return {m, dom, tgt, r};
}

Fixture fixture_flat_identity(const Params&) {
  const SmoothMap2 m = make_linear_map({1, 0, 0, 1});
  const Metric2 flat = flat_plane().metric;
  return {m, flat, flat, kUnit, Verdict::Harmonic, self_view(m, flat, flat, kUnit), {}, {}};
}

Fixture fixture_linear_antibianalytic(const Params& p) {
  const LinearMapCoeffs c = coeffs(p);
  const double pp = param(p, "p"), qq = param(p, "q");
  // with q < 0, sigma > 0 only on a disc: target the inscribed square and
  // shrink the sample square so the image stays clear of its edge
  Rect rect = kUnit;
  Rect target_rect = kWideRect;
  if (qq < 0.0) {
    const double side = 0.99 * std::sqrt(pp / (-2.0 * qq));
    const double room = side - 0.15;
    if (!(room > 0.0)) throw ParameterError("target disc too small for sampling");
    const double s = std::max(std::abs(c.a) + std::abs(c.b), std::abs(c.c) + std::abs(c.d));
    const double h = s > 0 ? std::min(1.0, room / s) : 1.0;
    rect = {-h, h, -h, h};
    target_rect = {-side, side, -side, side};
  }
  const SmoothMap2 m = make_linear_map(c);
  const Metric2 flat = flat_plane().metric;
  const Metric2 tgt = antibianalytic_target(pp, qq, target_rect).metric;
  const Verdict v = linear_is_harmonic_shape(c) ? Verdict::Harmonic : Verdict::ProperBiharmonic;
  return {m, flat, tgt, rect, v, self_view(m, flat, tgt, rect), {}, {}};
}

Fixture fixture_sphere_linear(const Params& p) {
  const LinearMapCoeffs c = coeffs(p);
  const SmoothMap2 m = make_linear_map(c);
  const Metric2 s = sphere_model().metric;
  const Verdict v = sphere_linear_is_biharmonic(c) == SphereLinearClass::NotBiharmonic ? Verdict::NotBiharmonic
                                                                                       : Verdict::Harmonic;
  return {m, s, s, kUnit, v, self_view(m, s, s, kUnit), {}, {}};
}

Fixture fixture_hyperbolic_linear(const Params& p) {
  const LinearMapCoeffs c = coeffs(p);
  const SmoothMap2 m = make_linear_map(c);
  const Metric2 h = hyperbolic_model().metric;
  const HyperbolicLinearResult r = hyperbolic_linear_is_biharmonic(c);
  Verdict v = Verdict::NotBiharmonic;
  if (r.cls != HyperbolicLinearClass::NotBiharmonic) v = r.proper ? Verdict::ProperBiharmonic : Verdict::Harmonic;
  // upper half-plane chart t = e^y: the metric becomes (dx^2 + dt^2) / t^2
  const double a = c.a, b = c.b, cc = c.c, d = c.d;
  const SmoothMap2 mv = SmoothMap2::analytic(
      [a, b](const RealJet& x, const RealJet& t) { return a * x + b * log(t); },
      [cc, d](const RealJet& x, const RealJet& t) { return exp(cc * x + d * log(t)); });
  const Metric2 half = Metric2::conformal(
      ScalarField2::analytic([](const RealJet&, const RealJet& t) { return 1.0 / t; }), {-100, 100, 1e-6, 1e6});
  const Rect vr{kUnit.x_min, kUnit.x_max, std::exp(kUnit.y_min), std::exp(kUnit.y_max)};
  return {m, h, h, kUnit, v, ConformalView{mv, half, half, vr}, {}, {}};
}

// Isothermal chart s(u) of a warp profile and its conformal factor lambda(s).
struct Isothermal {
  UnivariateFn s_of_u;
  UnivariateFn lambda_of_s;
  Rect s_rect;
};

Fixture profile_fixture(const ProfileFunction& f, const WarpProfile& w, const Isothermal& iso, Verdict expected,
                        Rect rect) {
  check_image(f, w);
  const Metric2 flat = flat_strip(f.interval());
  const UnivariateFn fn = f.function();
  const UnivariateFn s_of_u = iso.s_of_u;
  const UnivariateFn lam = iso.lambda_of_s;
  const SmoothMap2 mv = SmoothMap2::analytic([fn, s_of_u](const RealJet& x, const RealJet&) { return s_of_u(fn(x)); },
                                             [](const RealJet&, const RealJet& y) { return y; });
  const Metric2 tv =
      Metric2::conformal(ScalarField2::analytic([lam](const RealJet& s, const RealJet&) { return lam(s); }), iso.s_rect);
  return {f.as_map(), flat, w.metric(), rect, expected, ConformalView{mv, flat, tv, rect}, f, w};
}

Fixture fixture_lemaire(const Params& p) {
  const double a = param(p, "a");
  const ProfileFunction f = lemaire_family(param(p, "A"), param(p, "B"), param(p, "C"), param(p, "D"), a);
  const double half = std::min(2.0, f.interval().hi - 0.15);
  if (!(half > 0.0)) throw ParameterError("lemaire profile interval too short to sample");
  const Rect rect{-half, half, -1.0, 1.0};
  const Verdict v = is_zero(param(p, "C")) ? Verdict::Harmonic : Verdict::ProperBiharmonic;
  // s = asin(u / a), factor a cos s
  const Isothermal iso{[a](const RealJet& u) { return asin(u / a); },
                       [a](const RealJet& s) { return a * cos(s); },
                       {-std::numbers::pi / 2, std::numbers::pi / 2, -kUnbounded, kUnbounded}};
  return profile_fixture(f, WarpProfile::lemaire(a), iso, v, rect);
}

Fixture fixture_helicoid(const Params& p) {
  const double a = param(p, "a");
  const ProfileFunction f(helicoid_family(param(p, "A"), param(p, "B"), param(p, "C"), param(p, "D")).function(),
                          {-2.3, 2.3});
  const Verdict v =
      is_zero(param(p, "B")) && is_zero(param(p, "D")) ? Verdict::Harmonic : Verdict::ProperBiharmonic;
  // s = asinh(u / a), factor a cosh s
  const Isothermal iso{[a](const RealJet& u) { return asinh(u / a); },
                       [a](const RealJet& s) { return a * cosh(s); },
                       {-kUnbounded, kUnbounded, -kUnbounded, kUnbounded}};
  return profile_fixture(f, WarpProfile::helicoid(a), iso, v, {-2.0, 2.0, -1.0, 1.0});
}

Fixture fixture_cone(const Params& p) {
  const double x0 = param(p, "x0"), x1 = param(p, "x1");
  if (!(x0 < x1)) throw ParameterError("cone profile needs x0 < x1");
  const double pad = std::max(0.15, 0.02 * (x1 - x0));
  const ProfileFunction f =
      cone_family(param(p, "A"), param(p, "B"), param(p, "C"), param(p, "D"), {x0 - pad, x1 + pad});
  const bool positive = f(0.5 * (x0 + x1)) > 0.0;
  const Verdict v =
      is_zero(param(p, "B")) && is_zero(param(p, "D")) ? Verdict::Harmonic : Verdict::ProperBiharmonic;
  // s = sqrt2 ln|u|, factor e^{s / sqrt2} / sqrt2
  const double r2 = std::numbers::sqrt2;
  const Isothermal iso{[r2](const RealJet& u) { return r2 * log(abs(u)); },
                       [r2](const RealJet& s) { return exp(s / r2) / r2; },
                       {-kUnbounded, kUnbounded, -kUnbounded, kUnbounded}};
  return profile_fixture(f, WarpProfile::cone(positive), iso, v, {x0, x1, -1.0, 1.0});
}

Fixture identity_fixture(const IdentityFactorCase& c) {
  const IdentityFactor id = identity_factor(c);
  const WarpProfile w = id.warp();
  const ProfileFunction f([](const RealJet& x) { return x; }, id.domain);
  const double len = id.domain.hi - id.domain.lo;
  const double lo = std::max(id.domain.lo, -10.0), hi = std::min(id.domain.hi, 10.0);
  const double m = std::min(0.15, 0.25 * len);
  const Rect rect{lo + m, hi - m, -1.0, 1.0};
  return {f.as_map(), flat_strip(id.domain), w.metric(), rect, Verdict::ProperBiharmonic, {}, f, w};
}

Fixture fixture_identity_rational(const Params& p) {
  return identity_fixture({IdentityCase::Rational, 1.0, 1.0, param(p, "c1"), 0.0});
}
Fixture fixture_identity_trig(const Params& p) {
  return identity_fixture({IdentityCase::Trigonometric, param(p, "a"), 1.0, param(p, "c1"), param(p, "c2")});
}
Fixture fixture_identity_hyperbolic(const Params& p) {
  return identity_fixture({IdentityCase::Hyperbolic, 1.0, param(p, "b"), param(p, "c1"), param(p, "c2")});
}

Fixture fixture_poly_sphere(const Params& p) {
  const double a = param(p, "a"), b = param(p, "b");
  const SmoothMap2 m = SmoothMap2::analytic(
      [a](const RealJet& x, const RealJet& y) { return x + a * (x * x - y * y); },
      [b](const RealJet& x, const RealJet& y) { return y + b * x * y * y; });
  const Metric2 s = sphere_model().metric;
  return {m, s, s, kUnit, Verdict::NotBiharmonic, self_view(m, s, s, kUnit), {}, {}};
}

Fixture fixture_poly_antibianalytic(const Params& p) {
  const double a = param(p, "a"), b = param(p, "b");
  const SmoothMap2 m = SmoothMap2::analytic(
      [a](const RealJet& x, const RealJet& y) { return 2.0 * x + a * x * y; },
      [b](const RealJet& x, const RealJet& y) { return y + b * x * x; });
  const Metric2 flat = flat_plane().metric;
  const Metric2 tgt = antibianalytic_target(param(p, "p"), param(p, "q")).metric;
  return {m, flat, tgt, kUnit, Verdict::NotBiharmonic, self_view(m, flat, tgt, kUnit), {}, {}};
}

std::vector<CatalogEntry> make_catalog() {
  const std::vector<ParamSpec> abcd{{"a", 1, "row 1, x"}, {"b", 0, "row 1, y"}, {"c", 0, "row 2, x"},
                                    {"d", 2, "row 2, y"}};
  std::vector<CatalogEntry> c;
  c.push_back({"flat-identity", "identity map of the Euclidean plane", {}, fixture_flat_identity});
  c.push_back({"linear-antibianalytic",
               "linear map from the Euclidean plane into (p + q(u^2+v^2))^2 (du^2 + dv^2)",
               {{"a", 2, "row 1, x"},
                {"b", 0, "row 1, y"},
                {"c", 0, "row 2, x"},
                {"d", 1, "row 2, y"},
                {"p", 1, "constant term"},
                {"q", 1, "quadratic term"}},
               fixture_linear_antibianalytic});
  c.push_back({"sphere-linear", "linear map between stereographic sphere models", abcd, fixture_sphere_linear});
  c.push_back({"hyperbolic-linear",
               "linear map between hyperbolic planes e^{-2y}dx^2 + dy^2",
               {{"a", 0, "row 1, x"}, {"b", 0, "row 1, y"}, {"c", 1, "row 2, x"}, {"d", 1, "row 2, y"}},
               fixture_hyperbolic_linear});
  const std::vector<ParamSpec> ABCD{{"A", 1, ""}, {"B", 1, ""}, {"C", 0, ""}, {"D", 0, ""}};
  c.push_back({"lemaire-profile",
               "(A cos(x+B) + C x cos(x+D), y) into du^2 + (a^2 - u^2) dv^2",
               {{"A", 1, ""}, {"B", 0, ""}, {"C", 0.1, ""}, {"D", 0, ""}, {"a", 3, "target radius"}},
               fixture_lemaire});
  c.push_back({"helicoid-profile",
               "((A + Bx)e^x + (C + Dx)e^{-x}, y) into the helicoid du^2 + (a^2 + u^2) dv^2",
               {{"A", 1, ""}, {"B", 1, ""}, {"C", 0, ""}, {"D", 0, ""}, {"a", 1, "helicoid pitch"}},
               fixture_helicoid});
  c.push_back({"cone-profile",
               "((A + Bx)e^{x/sqrt2} + (C + Dx)e^{-x/sqrt2}, y) into the cone du^2 + u^2/2 dv^2",
               {{"A", 1, ""}, {"B", 1, ""}, {"C", 0, ""}, {"D", 0, ""}, {"x0", 0, "sample x start"},
                {"x1", 3, "sample x end"}},
               fixture_cone});
  c.push_back({"identity-rational", "identity into dx^2 - 4 ln|x + c1| dy^2", {{"c1", 0, ""}},
               fixture_identity_rational});
  c.push_back({"identity-trigonometric", "identity into dx^2 + (c2 - 4 ln|cos(ax/2 + c1)|) dy^2",
               {{"a", 2, ""}, {"c1", 0, ""}, {"c2", 1, ""}}, fixture_identity_trig});
  c.push_back({"identity-hyperbolic", "identity into dx^2 + (c2 - 4 ln|e^{bx/2} - c1 e^{-bx/2}|) dy^2",
               {{"b", 1, ""}, {"c1", -1, ""}, {"c2", 4, ""}}, fixture_identity_hyperbolic});
  c.push_back({"poly-sphere", "(x + a(x^2 - y^2), y + b x y^2) between sphere models",
               {{"a", 0.3, ""}, {"b", -0.2, ""}}, fixture_poly_sphere});
  c.push_back({"poly-antibianalytic", "(2x + a x y, y + b x^2) into the (p, q) target",
               {{"a", 0.4, ""}, {"b", 0.3, ""}, {"p", 1, ""}, {"q", 1, ""}}, fixture_poly_antibianalytic});
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = make_catalog();
  return entries;
}

const CatalogEntry& find_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw UnknownFamily("unknown catalog id '" + id + "'");
}

std::vector<std::pair<std::string, double>> resolve_params(const CatalogEntry& e, const Params& overrides) {
  for (const auto& [k, v] : overrides) {
    const bool known = std::any_of(e.params.begin(), e.params.end(), [&](const ParamSpec& s) { return s.name == k; });
    if (!known) throw ParameterError("'" + e.id + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw ParameterError("parameter '" + k + "' is not finite");
  }
  std::vector<std::pair<std::string, double>> out;
  for (const auto& s : e.params) {
    const auto it = overrides.find(s.name);
    out.emplace_back(s.name, it == overrides.end() ? s.default_value : it->second);
  }
  return out;
}

Fixture build_fixture(const std::string& id, const Params& overrides) {
  const CatalogEntry& e = find_entry(id);
  Params p;
  for (const auto& [k, v] : resolve_params(e, overrides)) p[k] = v;
  return e.build(p);
}

}  // namespace biharm

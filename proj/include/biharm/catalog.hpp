#pragma once

// Named metrics, maps and fixtures, plus the closed-form classifications of
// linear maps between sphere models and between hyperbolic planes.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biharm/geometry.hpp"
#include "biharm/map_calculus.hpp"
#include "biharm/verdict.hpp"
#include "biharm/warped_reduction.hpp"

namespace biharm {

struct LinearMapCoeffs {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  std::array<double, 2> row1() const { return {a, b}; }
  std::array<double, 2> row2() const { return {c, d}; }
};

/// (x, y) -> (ax + by, cx + dy)
SmoothMap2 make_linear_map(const LinearMapCoeffs& c);

/// sigma = p + q (u^2 + v^2). Throws ParameterError if sigma <= 0 somewhere on `domain`.
ScalarField2 make_antibianalytic_sigma(double p, double q, Rect domain = kDefaultDomain);

enum class GeometryTag { FlatPlane, SphereModel, AntiBianalyticTarget, HyperbolicModel, LemaireTarget, Helicoid, Cone };

const char* to_string(GeometryTag t);

struct NamedGeometry {
  GeometryTag tag;
  Metric2 metric;
};

inline constexpr Rect kWideRect{-100.0, 100.0, -100.0, 100.0};

NamedGeometry flat_plane(Rect domain = kWideRect);
/// 4 (dx^2 + dy^2) / (1 + x^2 + y^2)^2
NamedGeometry sphere_model();
/// (p + q (u^2 + v^2))^2 (du^2 + dv^2)
NamedGeometry antibianalytic_target(double p, double q, Rect domain = kWideRect);
/// e^{-2y} dx^2 + dy^2, held as a general metric
NamedGeometry hyperbolic_model();
NamedGeometry lemaire_target(double a);
NamedGeometry helicoid_target(double a);
NamedGeometry cone_target(bool positive = true);

// Closed-form classifications. Zero tests use |value| <= 1e-12.
inline constexpr double kCoeffZero = 1e-12;

enum class SphereLinearClass { ConstantMap, HarmonicConformal, NotBiharmonic };
const char* to_string(SphereLinearClass c);
SphereLinearClass sphere_linear_is_biharmonic(const LinearMapCoeffs& c);

enum class HyperbolicLinearClass { BiharmonicFamily_ab0, IdentityBranch, NotBiharmonic };
const char* to_string(HyperbolicLinearClass c);
struct HyperbolicLinearResult {
  HyperbolicLinearClass cls;
  bool proper = false;
};
HyperbolicLinearResult hyperbolic_linear_is_biharmonic(const LinearMapCoeffs& c);

/// -2 w^2 + 3 zbar w phi_zbar + 3 z w phi_z - 6 z zbar phi_z phi_zbar for the linear map
cplx sphere_linear_residual(const LinearMapCoeffs& c, cplx z);
/// The six coefficient polynomials of the expanded residual above (1, z^2, zbar^2 ... ordering kept fixed).
std::array<double, 6> sphere_linear_coefficients(const LinearMapCoeffs& c);
/// Both left-hand sides of the hyperbolic linear-map system at (x, y).
std::array<double, 2> hyperbolic_linear_lhs(const LinearMapCoeffs& c, double x, double y);

// Fixture registry.

/// Parameter values keyed by name.
using Params = std::map<std::string, double>;

struct ParamSpec {
  std::string name;
  double default_value;
  std::string help;
};

/// The same fixture written with both metrics conformal (isothermal charts).
struct ConformalView {
  SmoothMap2 map;
  Metric2 domain;
  Metric2 target;
  Rect rect;
};

struct Fixture {
  SmoothMap2 map;
  Metric2 domain;
  Metric2 target;
  Rect rect;  // recommended sampling rectangle
  Verdict expected;
  std::optional<ConformalView> conformal;
  std::optional<ProfileFunction> profile;
  std::optional<WarpProfile> warp;
};

struct CatalogEntry {
  std::string id;
  std::string description;
  std::vector<ParamSpec> params;
  std::function<Fixture(const Params&)> build;
};

const std::vector<CatalogEntry>& catalog();

/// Throws UnknownFamily.
const CatalogEntry& find_entry(const std::string& id);

/// Defaults overridden by `overrides`; unknown names raise ParameterError.
/// Returned in the entry's declared order.
std::vector<std::pair<std::string, double>> resolve_params(const CatalogEntry& e, const Params& overrides);

Fixture build_fixture(const std::string& id, const Params& overrides = {});

}  // namespace biharm

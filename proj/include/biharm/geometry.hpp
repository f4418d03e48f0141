#pragma once

// Riemannian metrics on 2D charts: components, inverse, Levi-Civita
// connection, Riemann tensor and Gauss curvature.
//
// Curvature sign convention: R(X, Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y]Z,
// with components R(d_i, d_j)d_k = R^l_{kij} d_l, stored as r[l][k][i][j].
// Under this convention R^1_{212} = K g_22 for an orthogonal metric, and the
// hyperbolic model e^{-2v}du^2 + dv^2 has R^1_{212} = -1.

#include <array>
#include <variant>

#include "biharm/errors.hpp"
#include "biharm/field.hpp"
#include "biharm/jet.hpp"

namespace biharm {

using Mat2 = std::array<std::array<double, 2>, 2>;

enum class MetricForm { Conformal, Warped, General };

const char* to_string(MetricForm form);

/// Component jets g11, g12, g22 of a metric about a point.
struct MetricJets {
  RealJet g11, g12, g22;

  const RealJet& operator()(int i, int j) const { return i == 0 && j == 0 ? g11 : (i == 1 && j == 1 ? g22 : g12); }
};

struct InverseMetricJets {
  RealJet h11, h12, h22;
  RealJet det;

  const RealJet& operator()(int i, int j) const { return i == 0 && j == 0 ? h11 : (i == 1 && j == 1 ? h22 : h12); }
};

/// Christoffel symbols as jets, gamma[k][i][j] = Gamma^k_{ij}.
struct ChristoffelJets {
  std::array<std::array<std::array<RealJet, 2>, 2>, 2> gamma;
};

class Metric2 {
 public:
  /// rho^2 (dx^2 + dy^2); requires rho > 0 at evaluation points.
  static Metric2 conformal(ScalarField2 rho, Rect domain = kDefaultDomain);

  /// du^2 + sigma^2(u) dv^2, given sigma^2 as a field read along u only.
  static Metric2 warped(ScalarField2 sigma_squared, Rect domain = kDefaultDomain);

  static Metric2 general(ScalarField2 g11, ScalarField2 g12, ScalarField2 g22,
                         Rect domain = kDefaultDomain);

  MetricForm form() const;
  const Rect& domain() const { return domain_; }
  bool is_analytic() const;

  /// Throws DomainError when p lies outside the validity rectangle.
  void require_inside(Point2 p) const;

  const ScalarField2& conformal_factor() const;
  const ScalarField2& warp_squared() const;

  /// The same metric with its components as a General form.
  Metric2 as_general() const;

  /// Component jets about p. Checks the domain and positive-definiteness.
  MetricJets expand(Point2 p, int order, double step_scale = 1.0) const;

 private:
  struct Conformal {
    ScalarField2 rho;
  };
  struct Warped {
    ScalarField2 sigma_squared;
  };
  struct General {
    ScalarField2 g11, g12, g22;
  };

  Metric2(std::variant<Conformal, Warped, General> rep, Rect domain);

  std::variant<Conformal, Warped, General> rep_;
  Rect domain_;
};

struct MetricEval {
  Mat2 g{};
  Mat2 ginv{};
  double det = 0.0;
};

MetricEval eval_metric(const Metric2& m, Point2 p);

struct Christoffel2 {
  std::array<std::array<std::array<double, 2>, 2>, 2> gamma{};

  double operator()(int k, int i, int j) const { return gamma[k][i][j]; }
};

struct Curvature2 {
  std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> r{};

  double operator()(int l, int k, int i, int j) const { return r[l][k][i][j]; }
};

Christoffel2 christoffel(const Metric2& m, Point2 p);
Curvature2 curvature(const Metric2& m, Point2 p);

/// Gauss curvature: the conformal formula K = -4 rho^-2 (ln rho)_{z zbar}
/// for Conformal metrics, the orthogonal E, G formula for Warped ones.
/// General metrics raise UnsupportedForm; use gauss_curvature_from_riemann.
double gauss_curvature(const Metric2& m, Point2 p);

/// K = -1/sqrt(EG) [ ((sqrt G)_u / sqrt E)_u + ((sqrt E)_v / sqrt G)_v ].
double gauss_curvature_orthogonal(const Metric2& m, Point2 p);

/// K = -4 rho^-2 (ln rho)_{z zbar}; Conformal metrics only.
double gauss_curvature_conformal(const Metric2& m, Point2 p);

/// K = R_{1212} / det g from the Riemann components; any form.
double gauss_curvature_from_riemann(const Metric2& m, Point2 p);

// Jet-level building blocks shared with the map calculus.

InverseMetricJets invert(const MetricJets& g);

/// Gamma^k_{ij} = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij); one order lower.
ChristoffelJets christoffel_jets(const MetricJets& g);

/// Riemann components at the base point from Christoffel jets of order >= 1.
Curvature2 riemann_at(const ChristoffelJets& gamma);

}  // namespace biharm

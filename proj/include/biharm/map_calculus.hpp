#pragma once

// Tension and bitension of maps between 2D charts.
//
// Two independent routes:
//  * general: real coordinates, any metric forms (the bitension is the
//    rough Laplacian of tau plus the curvature term, written out in
//    Christoffel symbols and Riemann components);
//  * conformal: both metrics conformal, everything in Wirtinger derivatives.
// Complex encoding throughout: w = phi^1 + i phi^2.

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "biharm/errors.hpp"
#include "biharm/field.hpp"
#include "biharm/geometry.hpp"
#include "biharm/jet.hpp"

namespace biharm {

using cplx = std::complex<double>;

class SmoothMap2 {
 public:
  SmoothMap2(ScalarField2 phi1, ScalarField2 phi2);

  static SmoothMap2 analytic(ScalarField2::JetFn phi1, ScalarField2::JetFn phi2);
  static SmoothMap2 sampled(ScalarField2::ValueFn phi1, ScalarField2::ValueFn phi2,
                            FdSteps steps = FdSteps::for_map());

  bool jets_analytic() const { return phi_[0].is_analytic() && phi_[1].is_analytic(); }
  const ScalarField2& component(int i) const { return phi_[i]; }

  Point2 operator()(Point2 p) const { return {phi_[0](p), phi_[1](p)}; }

  std::array<RealJet, 2> expand(Point2 p, int order, double step_scale = 1.0) const;

 private:
  std::array<ScalarField2, 2> phi_;
};

/// Wirtinger derivatives of w = phi^1 + i phi^2 about a point.
class ComplexJet {
 public:
  explicit ComplexJet(ComplexSeries w) : w_(std::move(w)) {}

  int order() const { return w_.order(); }
  cplx value() const { return w_.value(); }
  /// d^(a+b) w / dz^a dzbar^b
  cplx d(int a, int b) const;
  const ComplexSeries& series() const { return w_; }
  /// Jet of conj(w).
  ComplexJet conjugated() const { return ComplexJet(conjugate(w_)); }

 private:
  ComplexSeries w_;
};

struct FieldVector2 {
  double v1 = 0.0;
  double v2 = 0.0;

  double operator[](int i) const { return i == 0 ? v1 : v2; }
  cplx as_complex() const { return {v1, v2}; }
  static FieldVector2 from_complex(cplx c) { return {c.real(), c.imag()}; }
  bool finite() const { return std::isfinite(v1) && std::isfinite(v2); }
};

ComplexJet wirtinger_jet(const SmoothMap2& map, cplx z, int order);

/// |v|_h with h the target metric at `image`.
double h_norm(const FieldVector2& v, const Metric2& gN, Point2 image);

FieldVector2 tension_general(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p);

struct BitensionDetail {
  FieldVector2 value;
  FieldVector2 fd_error;     // componentwise, zero on the analytic path
  FieldVector2 term_scale;   // componentwise sum of |terms|
  FieldVector2 tension;
  FieldVector2 tension_scale;
  bool analytic = true;
};

/// Bitension by the general coordinate formula, with its error bookkeeping.
/// Never throws PrecisionLoss; callers decide.
BitensionDetail bitension_general_detail(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p);

/// Throws PrecisionLoss when the nested finite-difference error estimate is
/// not smaller than the value it qualifies.
FieldVector2 bitension_general(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p);

/// tau = 4 rho^-2 [w_{z zbar} + 2 (ln sigma)_w w_z w_zbar]
cplx tension_conformal(const ComplexJet& jet, const ScalarField2& rho, const ScalarField2& sigma, cplx z);

struct ConformalDetail {
  cplx tension;
  cplx bitension;
  double tension_scale = 0.0;
  double bitension_scale = 0.0;
};

ConformalDetail bitension_conformal_detail(const ComplexJet& jet, const ScalarField2& rho,
                                           const ScalarField2& sigma, cplx z);

cplx bitension_conformal(const ComplexJet& jet, const ScalarField2& rho, const ScalarField2& sigma, cplx z);

enum class Method { General, Conformal, Both };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct Tolerances {
  double abs = 1e-9;
  double rel = 1e-7;
  double fd_abs = 1e-4;
  double proper_margin = 10.0;
};

struct PointResidual {
  Point2 point;
  Point2 image;
  FieldVector2 tension;
  FieldVector2 bitension;
  double tension_norm = 0.0;
  double bitension_norm = 0.0;
  double fd_error = 0.0;  // h-norm of the componentwise error estimate
  double jet_scale = 0.0;
  double tension_tol = 0.0;
  double bitension_tol = 0.0;
  bool analytic = true;
  // Both-method extras
  std::optional<FieldVector2> conformal_bitension;
  double formula_gap = 0.0;
};

/// Sum of |partials| of both map components up to order 4 (0 for sampled maps).
double map_jet_scale(const SmoothMap2& map, Point2 p);

PointResidual biharmonic_residual(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p,
                                  Method method = Method::General, const Tolerances& tol = {});

}  // namespace biharm

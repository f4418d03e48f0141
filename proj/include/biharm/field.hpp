#pragma once

// Scalar fields on a 2D chart and the finite-difference jet synthesis used
// when a field is only available as a plain function.

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "biharm/jet.hpp"

namespace biharm {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Closed axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct Rect {
  double x_min = -10.0;
  double x_max = 10.0;
  double y_min = -10.0;
  double y_max = 10.0;

  bool contains(Point2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  /// Rectangle shrunk by `margin` on every side (may become empty).
  Rect shrunk(double margin) const {
    return {x_min + margin, x_max - margin, y_min + margin, y_max - margin};
  }
  bool empty() const { return !(x_min <= x_max && y_min <= y_max); }
  std::string to_string() const;
  friend bool operator==(const Rect&, const Rect&) = default;
};

inline constexpr Rect kDefaultDomain{-10.0, 10.0, -10.0, 10.0};

/// Step sizes for finite-difference jet synthesis, indexed by total
/// derivative order (1..4). Each step is scaled by (1 + |coordinate|).
struct FdSteps {
  std::array<double, 5> by_order{0.0, 1e-4, 1e-4, 5e-3, 1e-2};

  static FdSteps for_metric() { return {}; }
  static FdSteps for_map() { return {{0.0, 2e-3, 2e-3, 5e-3, 1e-2}}; }
};

/// Real function of two variables carried as a jet evaluator.
///
/// Analytic fields evaluate their defining expression on jets, so every
/// Taylor coefficient is exact up to rounding. Sampled fields only provide
/// point values; their jets come from 4th-order central stencils.
class ScalarField2 {
 public:
  using JetFn = std::function<RealJet(const RealJet&, const RealJet&)>;
  using ValueFn = std::function<double(double, double)>;

  /// The zero field.
  ScalarField2();

  static ScalarField2 analytic(JetFn f);
  static ScalarField2 sampled(ValueFn f, FdSteps steps = FdSteps::for_metric());
  static ScalarField2 constant(double c);

  bool is_analytic() const { return static_cast<bool>(jet_fn_); }

  double operator()(double x, double y) const;
  double operator()(Point2 p) const { return (*this)(p.x, p.y); }

  /// Taylor expansion about p in the increments (dx, dy), to `order`.
  /// `step_scale` multiplies the finite-difference steps of sampled fields.
  RealJet expand(Point2 p, int order, double step_scale = 1.0) const;

  /// The field composed with (x, y) given as jets over some other chart.
  RealJet compose(const RealJet& x, const RealJet& y) const;

 private:
  JetFn jet_fn_;
  ValueFn value_fn_;
  FdSteps steps_;
};

/// Taylor expansion of a sampled function by central differences.
RealJet finite_difference_expand(const ScalarField2::ValueFn& f, Point2 p, int order,
                                 const FdSteps& steps, double step_scale = 1.0);

}  // namespace biharm

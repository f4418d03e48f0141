#include "biharm/field.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "biharm/errors.hpp"

namespace biharm {

std::string Rect::to_string() const {
  std::ostringstream os;
  os << "[" << x_min << ", " << x_max << "] x [" << y_min << ", " << y_max << "]";
  return os.str();
}

ScalarField2::ScalarField2()
    : jet_fn_([](const RealJet& x, const RealJet&) { return RealJet::constant(0.0, x.order()); }) {}

ScalarField2 ScalarField2::analytic(JetFn f) {
  if (!f) throw ParameterError("analytic field needs a jet evaluator");
  ScalarField2 s;
  s.jet_fn_ = std::move(f);
  return s;
}

ScalarField2 ScalarField2::sampled(ValueFn f, FdSteps steps) {
  if (!f) throw ParameterError("sampled field needs a value function");
  ScalarField2 s;
  s.jet_fn_ = nullptr;
  s.value_fn_ = std::move(f);
  s.steps_ = steps;
  return s;
}

ScalarField2 ScalarField2::constant(double c) {
  return analytic([c](const RealJet& x, const RealJet&) { return RealJet::constant(c, x.order()); });
}

double ScalarField2::operator()(double x, double y) const {
  if (jet_fn_) return jet_fn_(RealJet::constant(x, 0), RealJet::constant(y, 0)).value();
  return value_fn_(x, y);
}

RealJet ScalarField2::expand(Point2 p, int order, double step_scale) const {
  if (jet_fn_) return jet_fn_(RealJet::variable(p.x, 0, order), RealJet::variable(p.y, 1, order));
  return finite_difference_expand(value_fn_, p, order, steps_, step_scale);
}

RealJet ScalarField2::compose(const RealJet& x, const RealJet& y) const {
  if (jet_fn_) return jet_fn_(x, y);
  const int n = std::min(x.order(), y.order());
  RealJet dx = x, dy = y;
  dx.set_coeff(0, 0, 0.0);
  dy.set_coeff(0, 0, 0.0);
  return biharm::compose(expand({x.value(), y.value()}, n), dx, dy);
}

namespace {

struct Stencil {
  int half_width;
  std::array<double, 7> weights;  // offsets -3..3
};

// Central 4th-order accurate stencils for derivative orders 0..4.
constexpr std::array<Stencil, 5> kStencils{{
    {0, {0, 0, 0, 1.0, 0, 0, 0}},
    {2, {0, 1.0 / 12, -2.0 / 3, 0, 2.0 / 3, -1.0 / 12, 0}},
    {2, {0, -1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12, 0}},
    {3, {1.0 / 8, -1.0, 13.0 / 8, 0, -13.0 / 8, 1.0, -1.0 / 8}},
    {3, {-1.0 / 6, 2.0, -13.0 / 2, 28.0 / 3, -13.0 / 2, 2.0, -1.0 / 6}},
}};

}  // namespace

RealJet finite_difference_expand(const ScalarField2::ValueFn& f, Point2 p, int order,
                                 const FdSteps& steps, double step_scale) {
  if (order < 0 || order > kMaxJetOrder) throw OrderUnavailable("finite-difference order > 4");
  RealJet r(order);
  r.set_coeff(0, 0, f(p.x, p.y));
  for (int n = 1; n <= order; ++n) {
    const double hx = steps.by_order[n] * step_scale * (1.0 + std::abs(p.x));
    const double hy = steps.by_order[n] * step_scale * (1.0 + std::abs(p.y));
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      const Stencil& sx = kStencils[i];
      const Stencil& sy = kStencils[j];
      double acc = 0.0;
      for (int a = -sx.half_width; a <= sx.half_width; ++a) {
        const double wa = sx.weights[a + 3];
        if (wa == 0.0) continue;
        for (int b = -sy.half_width; b <= sy.half_width; ++b) {
          const double wb = sy.weights[b + 3];
          if (wb == 0.0) continue;
          acc += wa * wb * f(p.x + a * hx, p.y + b * hy);
        }
      }
      const double partial = acc / (std::pow(hx, i) * std::pow(hy, j));
      r.set_coeff(i, j, partial / (detail::kFactorial[i] * detail::kFactorial[j]));
    }
  }
  return r;
}

}  // namespace biharm

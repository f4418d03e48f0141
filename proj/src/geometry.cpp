#include "biharm/geometry.hpp"

#include <cmath>
#include <sstream>

namespace biharm {

namespace {

std::string point_str(Point2 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

const char* to_string(MetricForm form) {
  switch (form) {
    case MetricForm::Conformal:
      return "conformal";
    case MetricForm::Warped:
      return "warped";
    case MetricForm::General:
      return "general";
  }
  return "unknown";
}

Metric2::Metric2(std::variant<Conformal, Warped, General> rep, Rect domain)
    : rep_(std::move(rep)), domain_(domain) {
  if (domain_.empty()) throw ParameterError("metric validity domain is empty");
}

Metric2 Metric2::conformal(ScalarField2 rho, Rect domain) { return Metric2(Conformal{std::move(rho)}, domain); }

Metric2 Metric2::warped(ScalarField2 sigma_squared, Rect domain) {
  return Metric2(Warped{std::move(sigma_squared)}, domain);
}

Metric2 Metric2::general(ScalarField2 g11, ScalarField2 g12, ScalarField2 g22, Rect domain) {
  return Metric2(General{std::move(g11), std::move(g12), std::move(g22)}, domain);
}

MetricForm Metric2::form() const {
  return std::visit(Overloaded{[](const Conformal&) { return MetricForm::Conformal; },
                               [](const Warped&) { return MetricForm::Warped; },
                               [](const General&) { return MetricForm::General; }},
                    rep_);
}

bool Metric2::is_analytic() const {
  return std::visit(Overloaded{[](const Conformal& c) { return c.rho.is_analytic(); },
                               [](const Warped& w) { return w.sigma_squared.is_analytic(); },
                               [](const General& g) {
                                 return g.g11.is_analytic() && g.g12.is_analytic() && g.g22.is_analytic();
                               }},
                    rep_);
}

void Metric2::require_inside(Point2 p) const {
  if (!(std::isfinite(p.x) && std::isfinite(p.y)) || !domain_.contains(p)) {
    throw DomainError("point " + point_str(p) + " outside metric domain " + domain_.to_string());
  }
}

const ScalarField2& Metric2::conformal_factor() const {
  if (const auto* c = std::get_if<Conformal>(&rep_)) return c->rho;
  throw UnsupportedForm(std::string("conformal factor requested from a ") + to_string(form()) + " metric");
}

const ScalarField2& Metric2::warp_squared() const {
  if (const auto* w = std::get_if<Warped>(&rep_)) return w->sigma_squared;
  throw UnsupportedForm(std::string("warp profile requested from a ") + to_string(form()) + " metric");
}

Metric2 Metric2::as_general() const {
  return std::visit(
      Overloaded{[&](const Conformal& c) {
                   const ScalarField2 rho = c.rho;
                   if (rho.is_analytic()) {
                     auto sq = ScalarField2::analytic([rho](const RealJet& x, const RealJet& y) {
                       const RealJet r = rho.compose(x, y);
                       return r * r;
                     });
                     return general(sq, ScalarField2::constant(0.0), sq, domain_);
                   }
                   auto sq = ScalarField2::sampled([rho](double x, double y) {
                     const double r = rho(x, y);
                     return r * r;
                   });
                   return general(sq, ScalarField2::constant(0.0), sq, domain_);
                 },
                 [&](const Warped& w) {
                   return general(ScalarField2::constant(1.0), ScalarField2::constant(0.0), w.sigma_squared,
                                  domain_);
                 },
                 [&](const General&) { return *this; }},
      rep_);
}

MetricJets Metric2::expand(Point2 p, int order, double step_scale) const {
  require_inside(p);
  MetricJets j = std::visit(
      Overloaded{[&](const Conformal& c) {
                   const RealJet rho = c.rho.expand(p, order, step_scale);
                   if (!(rho.value() > 0.0)) {
                     throw SingularMetric("conformal factor not positive at " + point_str(p));
                   }
                   const RealJet sq = rho * rho;
                   return MetricJets{sq, RealJet(order), sq};
                 },
                 [&](const Warped& w) {
                   // sigma^2 depends on u only; drop any v-dependence of the field.
                   const RealJet u = RealJet::variable(p.x, 0, order);
                   const RealJet s = w.sigma_squared.compose(u, RealJet::constant(p.y, order));
                   return MetricJets{RealJet::constant(1.0, order), RealJet(order), s};
                 },
                 [&](const General& g) {
                   return MetricJets{g.g11.expand(p, order, step_scale), g.g12.expand(p, order, step_scale),
                                     g.g22.expand(p, order, step_scale)};
                 }},
      rep_);
  const double det = j.g11.value() * j.g22.value() - j.g12.value() * j.g12.value();
  if (!(j.g11.value() > 0.0) || !(det > 0.0) || !std::isfinite(det)) {
    throw SingularMetric("metric not positive-definite at " + point_str(p));
  }
  return j;
}

InverseMetricJets invert(const MetricJets& g) {
  InverseMetricJets inv;
  inv.det = g.g11 * g.g22 - g.g12 * g.g12;
  const RealJet r = reciprocal(inv.det);
  inv.h11 = g.g22 * r;
  inv.h12 = -(g.g12 * r);
  inv.h22 = g.g11 * r;
  return inv;
}

ChristoffelJets christoffel_jets(const MetricJets& g) {
  const InverseMetricJets inv = invert(g);
  // dg[l][i][j] = d_l g_ij
  std::array<std::array<std::array<RealJet, 2>, 2>, 2> dg;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dg[l][i][j] = g(i, j).derivative(l);

  ChristoffelJets out;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      // first-kind symbols [ij, l]
      std::array<RealJet, 2> first;
      for (int l = 0; l < 2; ++l) first[l] = (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]) * 0.5;
      for (int k = 0; k < 2; ++k) {
        out.gamma[k][i][j] = inv(k, 0) * first[0] + inv(k, 1) * first[1];
        out.gamma[k][j][i] = out.gamma[k][i][j];
      }
    }
  }
  return out;
}

Curvature2 riemann_at(const ChristoffelJets& gj) {
  if (gj.gamma[0][0][0].order() < 1) throw OrderUnavailable("curvature needs Christoffel jets of order >= 1");
  auto G = [&](int k, int i, int j) { return gj.gamma[k][i][j].value(); };
  auto dG = [&](int d, int k, int i, int j) { return gj.gamma[k][i][j].partial(d == 0 ? 1 : 0, d == 1 ? 1 : 0); };
  Curvature2 c;
  for (int l = 0; l < 2; ++l) {
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          double v = dG(i, l, j, k) - dG(j, l, i, k);
          for (int m = 0; m < 2; ++m) v += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          c.r[l][k][i][j] = v;
        }
      }
    }
  }
  return c;
}

MetricEval eval_metric(const Metric2& m, Point2 p) {
  const MetricJets j = m.expand(p, 0);
  MetricEval e;
  e.g = {{{j.g11.value(), j.g12.value()}, {j.g12.value(), j.g22.value()}}};
  e.det = j.g11.value() * j.g22.value() - j.g12.value() * j.g12.value();
  e.ginv = {{{j.g22.value() / e.det, -j.g12.value() / e.det}, {-j.g12.value() / e.det, j.g11.value() / e.det}}};
  return e;
}

Christoffel2 christoffel(const Metric2& m, Point2 p) {
  const ChristoffelJets gj = christoffel_jets(m.expand(p, 1));
  Christoffel2 c;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c.gamma[k][i][j] = gj.gamma[k][i][j].value();
  return c;
}

Curvature2 curvature(const Metric2& m, Point2 p) { return riemann_at(christoffel_jets(m.expand(p, 2))); }

double gauss_curvature_orthogonal(const Metric2& m, Point2 p) {
  if (m.form() == MetricForm::General) {
    throw UnsupportedForm("orthogonal curvature formula needs a conformal or warped metric");
  }
  const MetricJets g = m.expand(p, 2);
  const RealJet sqrt_e = sqrt(g.g11);
  const RealJet sqrt_g = sqrt(g.g22);
  const RealJet a = (sqrt_g.derivative(0) / sqrt_e).derivative(0);
  const RealJet b = (sqrt_e.derivative(1) / sqrt_g).derivative(1);
  return -(a.value() + b.value()) / (sqrt_e.value() * sqrt_g.value());
}

double gauss_curvature_conformal(const Metric2& m, Point2 p) {
  if (m.form() != MetricForm::Conformal) {
    throw UnsupportedForm("complex curvature formula needs a conformal metric");
  }
  m.require_inside(p);
  const RealJet rho = m.conformal_factor().expand(p, 2);
  if (!(rho.value() > 0.0)) throw SingularMetric("conformal factor not positive");
  const ComplexSeries log_rho = to_wirtinger(log(rho));
  const double log_rho_zzbar = log_rho.partial(1, 1).real();
  return -4.0 * log_rho_zzbar / (rho.value() * rho.value());
}

double gauss_curvature(const Metric2& m, Point2 p) {
  switch (m.form()) {
    case MetricForm::Conformal:
      return gauss_curvature_conformal(m, p);
    case MetricForm::Warped:
      return gauss_curvature_orthogonal(m, p);
    case MetricForm::General:
      break;
  }
  throw UnsupportedForm("gauss_curvature: general metrics go through gauss_curvature_from_riemann");
}

double gauss_curvature_from_riemann(const Metric2& m, Point2 p) {
  const MetricJets g = m.expand(p, 2);
  const Curvature2 r = riemann_at(christoffel_jets(g));
  const double det = g.g11.value() * g.g22.value() - g.g12.value() * g.g12.value();
  const double r1212 = g.g11.value() * r(0, 1, 0, 1) + g.g12.value() * r(1, 1, 0, 1);
  return r1212 / det;
}

}  // namespace biharm

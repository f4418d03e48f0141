#include "biharm/map_calculus.hpp"

#include <cmath>
#include <sstream>

namespace biharm {

namespace {

using Arr2 = std::array<double, 2>;
using Arr22 = std::array<Arr2, 2>;
using Arr222 = std::array<Arr22, 2>;

std::string point_str(Point2 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

// Christoffel jets of the target, expanded in (du, dv) about w0.
struct TargetConnection {
  Point2 w0;
  ChristoffelJets gamma;
};

TargetConnection target_connection(const Metric2& gN, Point2 w0, int gamma_order, double step_scale = 1.0) {
  return {w0, christoffel_jets(gN.expand(w0, gamma_order + 1, step_scale))};
}

struct TensionSeries {
  std::array<RealJet, 2> tau;
  FieldVector2 scale;  // sum of |terms| at the base point
};

// tau^s = g^ij (phi^s_ij - Gamma^k_ij phi^s_k + Gbar^s_ab(phi) phi^a_i phi^b_j)
TensionSeries tension_series(const std::array<RealJet, 2>& phi, const MetricJets& gm, const TargetConnection& tg) {
  const InverseMetricJets h = invert(gm);
  const ChristoffelJets G = christoffel_jets(gm);
  std::array<std::array<RealJet, 2>, 2> d1;
  std::array<std::array<std::array<RealJet, 2>, 2>, 2> d2;
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < 2; ++i) {
      d1[a][i] = phi[a].derivative(i);
      for (int j = 0; j < 2; ++j) d2[a][i][j] = d1[a][i].derivative(j);
    }
  }
  RealJet du = phi[0], dv = phi[1];
  du.set_coeff(0, 0, 0.0);
  dv.set_coeff(0, 0, 0.0);
  std::array<std::array<std::array<RealJet, 2>, 2>, 2> gbar;
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int b = a; b < 2; ++b) gbar[s][b][a] = gbar[s][a][b] = compose(tg.gamma.gamma[s][a][b], du, dv);

  TensionSeries out;
  double scale[2] = {0.0, 0.0};
  for (int s = 0; s < 2; ++s) {
    RealJet acc;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        RealJet term = d2[s][i][j];
        double mag = std::abs(term.value());
        for (int k = 0; k < 2; ++k) {
          const RealJet t = G.gamma[k][i][j] * d1[s][k];
          term -= t;
          mag += std::abs(t.value());
        }
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            const RealJet t = gbar[s][a][b] * d1[a][i] * d1[b][j];
            term += t;
            mag += std::abs(t.value());
          }
        }
        acc += h(i, j) * term;
        scale[s] += std::abs(h(i, j).value()) * mag;
      }
    }
    out.tau[s] = acc;
  }
  out.scale = {scale[0], scale[1]};
  return out;
}

// Pointwise geometry entering the bitension formula.
struct Bi3Geometry {
  Arr22 ginv{};
  Christoffel2 gamma;
  Arr22 dphi{};  // dphi[a][i] = d_i phi^a
  Arr2 lap_phi{};
  Christoffel2 gbar;
  std::array<Arr222, 2> dgbar{};  // dgbar[r][s][a][b] = d_r Gbar^s_ab
  Curvature2 rbar;
};

Bi3Geometry bi3_geometry(const std::array<RealJet, 2>& phi, const MetricJets& gm, const ChristoffelJets& gbar) {
  Bi3Geometry g;
  const InverseMetricJets h = invert(gm);
  const ChristoffelJets G = christoffel_jets(gm);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g.ginv[i][j] = h(i, j).value();
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g.gamma.gamma[k][i][j] = G.gamma[k][i][j].value();
        g.gbar.gamma[k][i][j] = gbar.gamma[k][i][j].value();
        for (int r = 0; r < 2; ++r) g.dgbar[r][k][i][j] = gbar.gamma[k][i][j].partial(r == 0, r == 1);
      }
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i) g.dphi[a][i] = phi[a].partial(i == 0, i == 1);
  for (int b = 0; b < 2; ++b) {
    double lap = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double t = phi[b].partial((i == 0) + (j == 0), (i == 1) + (j == 1));
        for (int k = 0; k < 2; ++k) t -= g.gamma(k, i, j) * g.dphi[b][k];
        lap += g.ginv[i][j] * t;
      }
    }
    g.lap_phi[b] = lap;
  }
  g.rbar = riemann_at(gbar);
  return g;
}

struct TauData {
  Arr2 tau{};
  Arr22 dtau{};    // dtau[s][i]
  Arr222 ddtau{};  // ddtau[s][i][j]
};

struct Bi3Value {
  Arr2 value{};
  Arr2 scale{};
};

Bi3Value evaluate_bi3(const Bi3Geometry& g, const TauData& t) {
  // G[b][r] = g^ij phi^b_i phi^r_j
  Arr22 Gm{};
  for (int b = 0; b < 2; ++b)
    for (int r = 0; r < 2; ++r)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) Gm[b][r] += g.ginv[i][j] * g.dphi[b][i] * g.dphi[r][j];

  Bi3Value out;
  for (int s = 0; s < 2; ++s) {
    double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0, t5 = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double x = t.ddtau[s][i][j];
        for (int k = 0; k < 2; ++k) x -= g.gamma(k, i, j) * t.dtau[s][k];
        t1 += g.ginv[i][j] * x;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) t2 += 2.0 * g.ginv[i][j] * t.dtau[a][i] * g.dphi[b][j] * g.gbar(s, a, b);
      }
    }
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        t3 += t.tau[a] * g.lap_phi[b] * g.gbar(s, a, b);
        for (int r = 0; r < 2; ++r) {
          double conn = g.dgbar[r][s][a][b];
          for (int n = 0; n < 2; ++n) conn += g.gbar(n, a, b) * g.gbar(s, n, r);
          t4 += t.tau[a] * Gm[b][r] * conn;
        }
      }
    }
    for (int n = 0; n < 2; ++n)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) t5 -= t.tau[n] * Gm[a][b] * g.rbar(s, b, a, n);
    out.value[s] = t1 + t2 + t3 + t4 + t5;
    out.scale[s] = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);
  }
  return out;
}

TauData tau_data_from_series(const std::array<RealJet, 2>& tau) {
  TauData d;
  for (int s = 0; s < 2; ++s) {
    d.tau[s] = tau[s].value();
    for (int i = 0; i < 2; ++i) {
      d.dtau[s][i] = tau[s].partial(i == 0, i == 1);
      for (int j = 0; j < 2; ++j) d.ddtau[s][i][j] = tau[s].partial((i == 0) + (j == 0), (i == 1) + (j == 1));
    }
  }
  return d;
}

struct PointTension {
  Arr2 tau{};
  Arr2 scale{};
};

PointTension tension_at(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 q, double step_scale) {
  const auto phi = map.expand(q, 2, step_scale);
  const MetricJets gm = gM.expand(q, 1, step_scale);
  const Point2 w{phi[0].value(), phi[1].value()};
  const TensionSeries ts = tension_series(phi, gm, target_connection(gN, w, 0, step_scale));
  return {{ts.tau[0].value(), ts.tau[1].value()}, {ts.scale.v1, ts.scale.v2}};
}

// Outer step for nested differencing of tau, scaled by (1 + |coordinate|).
constexpr double kOuterStep = 4e-2;

BitensionDetail bitension_fd(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p) {
  const PointTension centre = tension_at(map, gM, gN, p, 1.0);
  const PointTension coarse = tension_at(map, gM, gN, p, 2.0);
  Arr2 eps{};
  for (int s = 0; s < 2; ++s)
    eps[s] = std::abs(centre.tau[s] - coarse.tau[s]) + 1e-14 * (centre.scale[s] + std::abs(centre.tau[s]));

  const double Hx = kOuterStep * (1.0 + std::abs(p.x));
  const double Hy = kOuterStep * (1.0 + std::abs(p.y));
  auto tau = [&](double dx, double dy) { return tension_at(map, gM, gN, {p.x + dx, p.y + dy}, 1.0).tau; };

  // Plain central differences at three step levels.
  std::array<TauData, 3> level;
  for (int l = 0; l < 3; ++l) {
    const double hx = Hx / (1 << l), hy = Hy / (1 << l);
    const Arr2 xp = tau(hx, 0), xm = tau(-hx, 0), yp = tau(0, hy), ym = tau(0, -hy);
    const Arr2 pp = tau(hx, hy), pm = tau(hx, -hy), mp = tau(-hx, hy), mm = tau(-hx, -hy);
    TauData& d = level[l];
    for (int s = 0; s < 2; ++s) {
      d.tau[s] = centre.tau[s];
      d.dtau[s][0] = (xp[s] - xm[s]) / (2 * hx);
      d.dtau[s][1] = (yp[s] - ym[s]) / (2 * hy);
      d.ddtau[s][0][0] = (xp[s] - 2 * centre.tau[s] + xm[s]) / (hx * hx);
      d.ddtau[s][1][1] = (yp[s] - 2 * centre.tau[s] + ym[s]) / (hy * hy);
      d.ddtau[s][0][1] = d.ddtau[s][1][0] = (pp[s] - pm[s] - mp[s] + mm[s]) / (4 * hx * hy);
    }
  }
  auto richardson = [](const TauData& coarse_d, const TauData& fine_d) {
    TauData r = fine_d;
    for (int s = 0; s < 2; ++s) {
      for (int i = 0; i < 2; ++i) {
        r.dtau[s][i] = (4 * fine_d.dtau[s][i] - coarse_d.dtau[s][i]) / 3;
        for (int j = 0; j < 2; ++j) r.ddtau[s][i][j] = (4 * fine_d.ddtau[s][i][j] - coarse_d.ddtau[s][i][j]) / 3;
      }
    }
    return r;
  };
  const TauData r1 = richardson(level[0], level[1]);
  const TauData r2 = richardson(level[1], level[2]);

  // Error per input: extrapolation disagreement plus amplified tau noise.
  const double hx1 = Hx / 2, hx2 = Hx / 4, hy1 = Hy / 2, hy2 = Hy / 4;
  const double first_amp[2] = {4.0 / 3 / hx2 + 1.0 / 3 / hx1, 4.0 / 3 / hy2 + 1.0 / 3 / hy1};
  const double pure_amp[2] = {4.0 / 3 * 4 / (hx2 * hx2) + 1.0 / 3 * 4 / (hx1 * hx1),
                              4.0 / 3 * 4 / (hy2 * hy2) + 1.0 / 3 * 4 / (hy1 * hy1)};
  const double mixed_amp = 4.0 / 3 / (hx2 * hy2) + 1.0 / 3 / (hx1 * hy1);
  TauData err;
  for (int s = 0; s < 2; ++s) {
    err.tau[s] = eps[s];
    for (int i = 0; i < 2; ++i) {
      err.dtau[s][i] = std::abs(r2.dtau[s][i] - r1.dtau[s][i]) + eps[s] * first_amp[i];
      for (int j = 0; j < 2; ++j) {
        const double amp = i == j ? pure_amp[i] : mixed_amp;
        err.ddtau[s][i][j] = std::abs(r2.ddtau[s][i][j] - r1.ddtau[s][i][j]) + eps[s] * amp;
      }
    }
  }

  const auto phi = map.expand(p, 2);
  const Point2 w0{phi[0].value(), phi[1].value()};
  const Bi3Geometry geo = bi3_geometry(phi, gM.expand(p, 1), target_connection(gN, w0, 1).gamma);
  const Bi3Value b = evaluate_bi3(geo, r2);

  // The formula is linear in (tau, d tau, dd tau): push each error through.
  Arr2 fd{};
  auto push = [&](auto set, double e) {
    if (e == 0.0) return;
    TauData unit;
    set(unit);
    const Bi3Value v = evaluate_bi3(geo, unit);
    for (int s = 0; s < 2; ++s) fd[s] += std::abs(v.value[s]) * e;
  };
  for (int s = 0; s < 2; ++s) {
    push([s](TauData& u) { u.tau[s] = 1.0; }, err.tau[s]);
    for (int i = 0; i < 2; ++i) push([s, i](TauData& u) { u.dtau[s][i] = 1.0; }, err.dtau[s][i]);
    push([s](TauData& u) { u.ddtau[s][0][0] = 1.0; }, err.ddtau[s][0][0]);
    push([s](TauData& u) { u.ddtau[s][1][1] = 1.0; }, err.ddtau[s][1][1]);
    push([s](TauData& u) { u.ddtau[s][0][1] = u.ddtau[s][1][0] = 1.0; }, err.ddtau[s][0][1]);
  }

  BitensionDetail out;
  out.value = {b.value[0], b.value[1]};
  out.fd_error = {fd[0], fd[1]};
  out.term_scale = {b.scale[0], b.scale[1]};
  out.tension = {centre.tau[0], centre.tau[1]};
  out.tension_scale = {centre.scale[0], centre.scale[1]};
  out.analytic = false;
  return out;
}

BitensionDetail bitension_jets(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p) {
  const auto phi = map.expand(p, 4);
  const MetricJets gm = gM.expand(p, 3);
  const Point2 w0{phi[0].value(), phi[1].value()};
  const TargetConnection tg = target_connection(gN, w0, 2);
  const TensionSeries ts = tension_series(phi, gm, tg);
  const Bi3Geometry geo = bi3_geometry(phi, gm, tg.gamma);
  const Bi3Value b = evaluate_bi3(geo, tau_data_from_series(ts.tau));
  BitensionDetail out;
  out.value = {b.value[0], b.value[1]};
  out.term_scale = {b.scale[0], b.scale[1]};
  out.tension = {ts.tau[0].value(), ts.tau[1].value()};
  out.tension_scale = ts.scale;
  out.analytic = true;
  return out;
}

double abs_h_norm(const FieldVector2& e, const MetricEval& h) {
  const double q = h.g[0][0] * e.v1 * e.v1 + 2 * std::abs(h.g[0][1] * e.v1 * e.v2) + h.g[1][1] * e.v2 * e.v2;
  return std::sqrt(q);
}

ComplexSeries complex_log_factor(const ScalarField2& f, cplx at, int order, const char* what) {
  const RealJet j = f.expand({at.real(), at.imag()}, order);
  if (!(j.value() > 0.0)) {
    std::ostringstream os;
    os << what << " not positive at " << at;
    throw DomainError(os.str());
  }
  return to_wirtinger(log(j));
}

}  // namespace

SmoothMap2::SmoothMap2(ScalarField2 phi1, ScalarField2 phi2) : phi_{std::move(phi1), std::move(phi2)} {}

SmoothMap2 SmoothMap2::analytic(ScalarField2::JetFn phi1, ScalarField2::JetFn phi2) {
  return SmoothMap2(ScalarField2::analytic(std::move(phi1)), ScalarField2::analytic(std::move(phi2)));
}

SmoothMap2 SmoothMap2::sampled(ScalarField2::ValueFn phi1, ScalarField2::ValueFn phi2, FdSteps steps) {
  return SmoothMap2(ScalarField2::sampled(std::move(phi1), steps), ScalarField2::sampled(std::move(phi2), steps));
}

std::array<RealJet, 2> SmoothMap2::expand(Point2 p, int order, double step_scale) const {
  std::array<RealJet, 2> r{phi_[0].expand(p, order, step_scale), phi_[1].expand(p, order, step_scale)};
  if (!std::isfinite(r[0].value()) || !std::isfinite(r[1].value())) {
    throw DomainError("map not finite at " + point_str(p));
  }
  return r;
}

cplx ComplexJet::d(int a, int b) const {
  if (a < 0 || b < 0 || a + b > w_.order()) throw OrderUnavailable("Wirtinger derivative beyond jet order");
  return w_.partial(a, b);
}

ComplexJet wirtinger_jet(const SmoothMap2& map, cplx z, int order) {
  if (order < 0 || order > kMaxJetOrder) throw OrderUnavailable("Wirtinger jets are carried to order 4");
  const auto phi = map.expand({z.real(), z.imag()}, order);
  return ComplexJet(to_wirtinger(phi[0], phi[1]));
}

double h_norm(const FieldVector2& v, const Metric2& gN, Point2 image) {
  const MetricEval h = eval_metric(gN, image);
  const double q = h.g[0][0] * v.v1 * v.v1 + 2 * h.g[0][1] * v.v1 * v.v2 + h.g[1][1] * v.v2 * v.v2;
  return std::sqrt(std::max(q, 0.0));
}

FieldVector2 tension_general(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p) {
  const PointTension t = tension_at(map, gM, gN, p, 1.0);
  return {t.tau[0], t.tau[1]};
}

BitensionDetail bitension_general_detail(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p) {
  if (map.jets_analytic() && gM.is_analytic() && gN.is_analytic()) return bitension_jets(map, gM, gN, p);
  return bitension_fd(map, gM, gN, p);
}

FieldVector2 bitension_general(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p) {
  const BitensionDetail d = bitension_general_detail(map, gM, gN, p);
  if (!d.analytic) {
    const double v = std::hypot(d.value.v1, d.value.v2);
    const double e = std::hypot(d.fd_error.v1, d.fd_error.v2);
    if (e >= v && v > Tolerances{}.fd_abs) {
      std::ostringstream os;
      os << "nested differencing error " << e << " exceeds bitension " << v << " at " << point_str(p);
      throw PrecisionLoss(os.str());
    }
  }
  return d.value;
}

cplx tension_conformal(const ComplexJet& jet, const ScalarField2& rho, const ScalarField2& sigma, cplx z) {
  if (jet.order() < 2) throw OrderUnavailable("tension needs a jet of order 2");
  const double r = rho({z.real(), z.imag()});
  if (!(r > 0.0)) throw DomainError("domain conformal factor not positive");
  const cplx w0 = jet.value();
  const ComplexSeries L = complex_log_factor(sigma, w0, 1, "target conformal factor");
  const cplx Lw = L.partial(1, 0);
  return 4.0 / (r * r) * (jet.d(1, 1) + 2.0 * Lw * jet.d(1, 0) * jet.d(0, 1));
}

ConformalDetail bitension_conformal_detail(const ComplexJet& jet, const ScalarField2& rho,
                                           const ScalarField2& sigma, cplx z) {
  if (jet.order() < 4) throw OrderUnavailable("bitension needs a jet of order 4");
  const RealJet rj = rho.expand({z.real(), z.imag()}, 2);
  if (!(rj.value() > 0.0)) throw DomainError("domain conformal factor not positive");
  const ComplexSeries rho_inv2 = to_wirtinger(1.0 / (rj * rj));

  const ComplexSeries& W = jet.series();
  const cplx w0 = W.value();
  const ComplexSeries L = complex_log_factor(sigma, w0, 3, "target conformal factor");
  const ComplexSeries Lw = L.derivative(0);
  ComplexSeries dW = W, dWbar = conjugate(W);
  dW.set_coeff(0, 0, 0.0);
  dWbar.set_coeff(0, 0, 0.0);
  const ComplexSeries Lw_phi = compose(Lw, dW, dWbar);

  const ComplexSeries Wz = W.derivative(0), Wzb = W.derivative(1);
  const ComplexSeries tau = 4.0 * rho_inv2 * (Wz.derivative(1) + 2.0 * Lw_phi * Wz * Wzb);

  const cplx t = tau.value();
  const cplx tz = tau.partial(1, 0), tzb = tau.partial(0, 1), tzzb = tau.partial(1, 1);
  const cplx pz = Wz.value(), pzb = Wzb.value();
  const cplx lw = Lw.value(), lww = L.partial(2, 0), lwwb = L.partial(1, 1);
  const double r = rj.value();
  const double f = 4.0 / (r * r);

  ConformalDetail out;
  out.tension = t;
  const cplx quarter = 0.25 * r * r * t * t;
  out.bitension = f * (tzzb + 2.0 * lw * (tz * pzb + tzb * pz + quarter) + 2.0 * std::conj(t) * lwwb * pz * pzb +
                       2.0 * t * lww * pz * pzb);
  out.tension_scale = f * (std::abs(jet.d(1, 1)) + 2.0 * std::abs(lw * pz * pzb));
  out.bitension_scale =
      f * (std::abs(tzzb) + 2.0 * std::abs(lw) * (std::abs(tz * pzb) + std::abs(tzb * pz) + std::abs(quarter)) +
           2.0 * std::abs(t * lwwb * pz * pzb) + 2.0 * std::abs(t * lww * pz * pzb));
  return out;
}

cplx bitension_conformal(const ComplexJet& jet, const ScalarField2& rho, const ScalarField2& sigma, cplx z) {
  return bitension_conformal_detail(jet, rho, sigma, z).bitension;
}

const char* to_string(Method m) {
  switch (m) {
    case Method::General:
      return "general";
    case Method::Conformal:
      return "conformal";
    case Method::Both:
      return "both";
  }
  return "general";
}

Method method_from_string(const std::string& s) {
  if (s == "general") return Method::General;
  if (s == "conformal") return Method::Conformal;
  if (s == "both") return Method::Both;
  throw ParseError("unknown method '" + s + "' (general, conformal, both)");
}

double map_jet_scale(const SmoothMap2& map, Point2 p) {
  if (!map.jets_analytic()) return 0.0;
  const auto phi = map.expand(p, 4);
  return phi[0].partial_abs_sum() + phi[1].partial_abs_sum();
}

namespace {

PointResidual residual_at(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p, Method method,
                          const Tolerances& tol) {
  PointResidual r;
  r.point = p;
  r.image = map(p);
  gM.require_inside(p);
  gN.require_inside(r.image);
  const MetricEval h = eval_metric(gN, r.image);
  r.jet_scale = map_jet_scale(map, p);

  if (method != Method::General) {
    if (gM.form() != MetricForm::Conformal || gN.form() != MetricForm::Conformal) {
      throw UnsupportedForm("conformal method needs both metrics in conformal form");
    }
  }

  if (method == Method::Conformal) {
    const cplx z{p.x, p.y};
    const ConformalDetail c =
        bitension_conformal_detail(wirtinger_jet(map, z, 4), gM.conformal_factor(), gN.conformal_factor(), z);
    r.tension = FieldVector2::from_complex(c.tension);
    r.bitension = FieldVector2::from_complex(c.bitension);
    r.analytic = map.jets_analytic() && gM.is_analytic() && gN.is_analytic();
    const double sigma = std::sqrt(h.g[0][0]);
    r.tension_tol = r.analytic ? tol.abs + tol.rel * (r.jet_scale + sigma * c.tension_scale) : tol.fd_abs;
    r.bitension_tol = r.analytic ? tol.abs + tol.rel * (r.jet_scale + sigma * c.bitension_scale) : tol.fd_abs;
  } else {
    const BitensionDetail d = bitension_general_detail(map, gM, gN, p);
    r.tension = d.tension;
    r.bitension = d.value;
    r.analytic = d.analytic;
    r.fd_error = abs_h_norm(d.fd_error, h);
    r.tension_tol = r.analytic ? tol.abs + tol.rel * (r.jet_scale + abs_h_norm(d.tension_scale, h)) : tol.fd_abs;
    r.bitension_tol = r.analytic ? tol.abs + tol.rel * (r.jet_scale + abs_h_norm(d.term_scale, h)) : tol.fd_abs;
    if (method == Method::Both) {
      const cplx z{p.x, p.y};
      const cplx b =
          bitension_conformal(wirtinger_jet(map, z, 4), gM.conformal_factor(), gN.conformal_factor(), z);
      r.conformal_bitension = FieldVector2::from_complex(b);
      r.formula_gap = std::abs(b - r.bitension.as_complex());
    }
  }
  r.tension_norm = h_norm(r.tension, gN, r.image);
  r.bitension_norm = h_norm(r.bitension, gN, r.image);
  if (!r.tension.finite() || !r.bitension.finite()) throw DomainError("non-finite residual at " + point_str(p));
  return r;
}

}  // namespace

PointResidual biharmonic_residual(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, Point2 p,
                                  Method method, const Tolerances& tol) {
  try {
    return residual_at(map, gM, gN, p, method, tol);
  } catch (const std::domain_error& e) {
    // elementary functions on jets report out-of-domain arguments this way
    throw DomainError(std::string(e.what()) + " at " + point_str(p));
  }
}

}  // namespace biharm

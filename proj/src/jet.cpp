#include "biharm/jet.hpp"

namespace biharm {

namespace {
using cplx = std::complex<double>;

ComplexSeries promote(const RealJet& f) {
  ComplexSeries r(f.order());
  for (int n = 0; n <= f.order(); ++n)
    for (int j = 0; j <= n; ++j) r.set_coeff(n - j, j, f.coeff(n - j, j));
  return r;
}

// dx and dy written in the (dz, dzbar) basis.
ComplexSeries dx_in_wirtinger(int order) {
  ComplexSeries d(order);
  if (order >= 1) {
    d.set_coeff(1, 0, 0.5);
    d.set_coeff(0, 1, 0.5);
  }
  return d;
}
ComplexSeries dy_in_wirtinger(int order) {
  ComplexSeries d(order);
  if (order >= 1) {
    d.set_coeff(1, 0, cplx(0.0, -0.5));
    d.set_coeff(0, 1, cplx(0.0, 0.5));
  }
  return d;
}
}  // namespace

ComplexSeries to_wirtinger(const RealJet& f) {
  const int n = f.order();
  return compose(promote(f), dx_in_wirtinger(n), dy_in_wirtinger(n));
}

ComplexSeries to_wirtinger(const RealJet& re, const RealJet& im) {
  const int n = std::min(re.order(), im.order());
  ComplexSeries c(n);
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= k; ++j) c.set_coeff(k - j, j, cplx(re.coeff(k - j, j), im.coeff(k - j, j)));
  return compose(c, dx_in_wirtinger(n), dy_in_wirtinger(n));
}

ComplexSeries conjugate(const ComplexSeries& w) {
  ComplexSeries r(w.order());
  for (int n = 0; n <= w.order(); ++n)
    for (int j = 0; j <= n; ++j) r.set_coeff(n - j, j, std::conj(w.coeff(j, n - j)));
  return r;
}

std::array<RealJet, 2> from_wirtinger(const ComplexSeries& w) {
  const int n = w.order();
  ComplexSeries dz(n), dzbar(n);
  if (n >= 1) {
    dz.set_coeff(1, 0, 1.0);
    dz.set_coeff(0, 1, cplx(0.0, 1.0));
    dzbar.set_coeff(1, 0, 1.0);
    dzbar.set_coeff(0, 1, cplx(0.0, -1.0));
  }
  const ComplexSeries xy = compose(w, dz, dzbar);
  RealJet re(n), im(n);
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= k; ++j) {
      re.set_coeff(k - j, j, xy.coeff(k - j, j).real());
      im.set_coeff(k - j, j, xy.coeff(k - j, j).imag());
    }
  }
  return {re, im};
}

}  // namespace biharm

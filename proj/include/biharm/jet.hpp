#pragma once

// Truncated bivariate Taylor series ("jets") with forward-mode arithmetic.
//
// A Jet<T> of order n holds the Taylor coefficients c_ij (i + j <= n) of a
// function of two variables about a base point, so that
//     f(p + (d0, d1)) = sum c_ij d0^i d1^j + O(|d|^(n+1)).
// Every operation propagates the truncation order: the result of combining
// jets of orders m and n is only valid to min(m, n), and differentiation
// lowers the order by one. Coefficients above the order are kept at zero.
//
// The same type is used with T = double for real (dx, dy) expansions and
// with T = std::complex<double> for expansions in the Wirtinger basis
// (dz, dzbar), where derivative(0) is d/dz and derivative(1) is d/dzbar.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace biharm {

inline constexpr int kMaxJetOrder = 4;

namespace detail {
inline constexpr std::array<double, 5> kFactorial{1.0, 1.0, 2.0, 6.0, 24.0};
}  // namespace detail

template <class T>
class Jet {
 public:
  static constexpr int kSize = (kMaxJetOrder + 1) * (kMaxJetOrder + 2) / 2;

  static constexpr int index(int i, int j) {
    const int n = i + j;
    return n * (n + 1) / 2 + j;
  }

  Jet() { c_.fill(T{}); }
  explicit Jet(int order) : order_(order) {
    if (order < 0 || order > kMaxJetOrder) {
      throw std::out_of_range("jet order out of range");
    }
    c_.fill(T{});
  }

  static Jet constant(T value, int order = kMaxJetOrder) {
    Jet r(order);
    r.c_[0] = value;
    return r;
  }

  /// Expansion of the coordinate function `var` (0 or 1) about `at`.
  static Jet variable(T at, int var, int order = kMaxJetOrder) {
    Jet r(order);
    r.c_[0] = at;
    if (order >= 1) r.c_[var == 0 ? index(1, 0) : index(0, 1)] = T{1};
    return r;
  }

  int order() const { return order_; }
  T value() const { return c_[0]; }

  T coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_) return T{};
    return c_[index(i, j)];
  }
  void set_coeff(int i, int j, T v) {
    if (i < 0 || j < 0 || i + j > order_) throw std::out_of_range("jet coefficient out of range");
    c_[index(i, j)] = v;
  }

  /// Partial derivative d^(i+j) / d0^i d1^j at the base point.
  T partial(int i, int j) const {
    return coeff(i, j) * T(detail::kFactorial[i] * detail::kFactorial[j]);
  }

  Jet derivative(int var) const {
    if (order_ == 0) throw std::domain_error("cannot differentiate an order-0 jet");
    Jet r(order_ - 1);
    for (int n = 0; n <= order_ - 1; ++n) {
      for (int j = 0; j <= n; ++j) {
        const int i = n - j;
        if (var == 0) {
          r.c_[index(i, j)] = T(double(i + 1)) * c_[index(i + 1, j)];
        } else {
          r.c_[index(i, j)] = T(double(j + 1)) * c_[index(i, j + 1)];
        }
      }
    }
    return r;
  }

  Jet truncated(int order) const {
    Jet r(std::min(order, order_));
    for (int k = 0; k < num_coeffs(r.order_); ++k) r.c_[k] = c_[k];
    return r;
  }

  /// Sum of absolute values of all partial derivatives carried by the jet.
  double partial_abs_sum() const {
    double s = 0.0;
    for (int n = 0; n <= order_; ++n)
      for (int j = 0; j <= n; ++j) s += std::abs(partial(n - j, j));
    return s;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    lower_to(o.order_);
    for (int k = 0; k < num_coeffs(order_); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    lower_to(o.order_);
    for (int k = 0; k < num_coeffs(order_); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(T s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(T s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet& operator/=(T s) {
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    const int n = r.order_;
    for (int n1 = 0; n1 <= n; ++n1) {
      for (int j1 = 0; j1 <= n1; ++j1) {
        const T av = a.c_[index(n1 - j1, j1)];
        if (av == T{}) continue;
        for (int n2 = 0; n2 <= n - n1; ++n2) {
          for (int j2 = 0; j2 <= n2; ++j2) {
            r.c_[index(n1 - j1 + n2 - j2, j1 + j2)] += av * b.c_[index(n2 - j2, j2)];
          }
        }
      }
    }
    return r;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, T s) { return a += s; }
  friend Jet operator+(T s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, T s) { return a -= s; }
  friend Jet operator-(T s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, T s) { return a /= s; }

 private:
  static constexpr int num_coeffs(int order) { return (order + 1) * (order + 2) / 2; }

  void lower_to(int order) {
    if (order >= order_) return;
    for (int k = num_coeffs(order); k < kSize; ++k) c_[k] = T{};
    order_ = order;
  }

  std::array<T, kSize> c_{};
  int order_ = kMaxJetOrder;
};

using RealJet = Jet<double>;
using ComplexSeries = Jet<std::complex<double>>;

/// Composes a univariate function g with x, given g^(k)(x.value()) in
/// `derivs[k]` for k = 0..x.order().
template <class T>
Jet<T> apply_univariate(const Jet<T>& x, const std::array<T, kMaxJetOrder + 1>& derivs) {
  const int n = x.order();
  Jet<T> d = x;
  d.set_coeff(0, 0, T{});
  Jet<T> r = Jet<T>::constant(derivs[n] / T(detail::kFactorial[n]), n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * d;
    r += derivs[k] / T(detail::kFactorial[k]);
  }
  return r;
}

/// Substitutes the increments (du, dv) into a series `poly` expanded in its
/// own pair of variables. du and dv must have zero constant terms.
template <class T>
Jet<T> compose(const Jet<T>& poly, const Jet<T>& du, const Jet<T>& dv) {
  const int n = std::min({poly.order(), du.order(), dv.order()});
  Jet<T> result(n);
  for (int i = n; i >= 0; --i) {
    Jet<T> inner = Jet<T>::constant(poly.coeff(i, n - i), n);
    for (int j = n - i - 1; j >= 0; --j) {
      inner = inner * dv;
      inner += poly.coeff(i, j);
    }
    result = (i == n) ? inner : result * du + inner;
  }
  return result;
}

template <class T>
Jet<T> reciprocal(const Jet<T>& x) {
  const T x0 = x.value();
  if (x0 == T{}) throw std::domain_error("jet reciprocal of zero");
  std::array<T, kMaxJetOrder + 1> d{};
  T inv = T{1} / x0;
  T p = inv;
  double sign = 1.0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    d[k] = T(sign * detail::kFactorial[k]) * p;
    p *= inv;
    sign = -sign;
  }
  return apply_univariate(x, d);
}

template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  return a * reciprocal(b);
}
template <class T>
Jet<T> operator/(T s, const Jet<T>& b) {
  return reciprocal(b) * s;
}
inline RealJet operator/(double s, const RealJet& b) { return reciprocal(b) * s; }

// Elementary functions on real jets.

inline RealJet exp(const RealJet& x) {
  const double e = std::exp(x.value());
  return apply_univariate(x, {e, e, e, e, e});
}

inline RealJet log(const RealJet& x) {
  const double x0 = x.value();
  if (!(x0 > 0.0)) throw std::domain_error("jet log of non-positive value");
  const double r = 1.0 / x0;
  return apply_univariate(x, {std::log(x0), r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r});
}

/// x^e for real exponent e. Integer exponents accept negative bases.
inline RealJet pow(const RealJet& x, double e) {
  const double x0 = x.value();
  const bool integral = std::floor(e) == e;
  if (!integral && !(x0 > 0.0)) throw std::domain_error("jet pow of non-positive base");
  if (integral && x0 == 0.0 && e < 0.0) throw std::domain_error("jet pow of zero base");
  std::array<double, kMaxJetOrder + 1> d{};
  double falling = 1.0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    const double p = e - k;
    d[k] = falling == 0.0 ? 0.0 : falling * std::pow(x0, p);
    falling *= p;
  }
  return apply_univariate(x, d);
}

inline RealJet sqrt(const RealJet& x) { return pow(x, 0.5); }

inline RealJet sin(const RealJet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return apply_univariate(x, {s, c, -s, -c, s});
}

inline RealJet cos(const RealJet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return apply_univariate(x, {c, -s, -c, s, c});
}

inline RealJet tan(const RealJet& x) { return sin(x) / cos(x); }

inline RealJet sinh(const RealJet& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return apply_univariate(x, {s, c, s, c, s});
}

inline RealJet cosh(const RealJet& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return apply_univariate(x, {c, s, c, s, c});
}

inline RealJet abs(const RealJet& x) {
  if (x.value() == 0.0) throw std::domain_error("jet abs at zero");
  return x.value() > 0.0 ? x : -x;
}

namespace detail {
// Builds g^(k)(t0), k = 0..4, from g(t0) and a generator of the series of g'.
template <class DerivSeries>
RealJet integrate_derivative(const RealJet& x, double g0, DerivSeries&& gprime) {
  const RealJet t = RealJet::variable(x.value(), 0, kMaxJetOrder - 1);
  const RealJet s = gprime(t);
  std::array<double, kMaxJetOrder + 1> d{g0};
  for (int k = 0; k < kMaxJetOrder; ++k) d[k + 1] = s.coeff(k, 0) * kFactorial[k];
  return apply_univariate(x, d);
}
}  // namespace detail

inline RealJet asin(const RealJet& x) {
  if (!(std::abs(x.value()) < 1.0)) throw std::domain_error("jet asin outside (-1, 1)");
  return detail::integrate_derivative(x, std::asin(x.value()),
                                      [](const RealJet& t) { return pow(1.0 - t * t, -0.5); });
}

inline RealJet asinh(const RealJet& x) {
  return detail::integrate_derivative(x, std::asinh(x.value()),
                                      [](const RealJet& t) { return pow(1.0 + t * t, -0.5); });
}

inline RealJet atan(const RealJet& x) {
  return detail::integrate_derivative(x, std::atan(x.value()),
                                      [](const RealJet& t) { return 1.0 / (1.0 + t * t); });
}

// Wirtinger-basis helpers.

/// Re-expands a real (dx, dy) series in the basis (dz, dzbar), using
/// dx = (dz + dzbar) / 2 and dy = (dz - dzbar) / (2i).
ComplexSeries to_wirtinger(const RealJet& f);

/// Same for a complex-valued function given by its real and imaginary parts.
ComplexSeries to_wirtinger(const RealJet& re, const RealJet& im);

/// Series of the complex conjugate function: coefficient (a, b) of the
/// result is conj of coefficient (b, a) of the input.
ComplexSeries conjugate(const ComplexSeries& w);

/// Recovers the real (dx, dy) expansions of real and imaginary parts.
std::array<RealJet, 2> from_wirtinger(const ComplexSeries& w);

}  // namespace biharm

#pragma once

#include <cmath>
#include <utility>

namespace mok {

/// Degree and superscript of an associated Laguerre polynomial L_n^alpha.
/// A degree of -1 is accepted and evaluates to zero.
struct PolyOrder {
  long n = 0;
  int alpha = 0;
};

/// L_n^alpha(x) by the three-term recurrence.
template <typename Real>
Real laguerre(PolyOrder order, Real x) {
  if (order.n < 0) return Real(0);
  const Real alpha = Real(order.alpha);
  Real prev = Real(1);
  if (order.n == 0) return prev;
  Real cur = Real(1) + alpha - x;
  for (long k = 1; k < order.n; ++k) {
    const Real kk = Real(k);
    const Real next = ((Real(2) * kk + Real(1) + alpha - x) * cur - (kk + alpha) * prev) / (kk + Real(1));
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Physicists' Hermite polynomial H_n(x); H_{-1} is zero.
template <typename Real>
Real hermite(int n, Real x) {
  if (n < 0) return Real(0);
  Real prev = Real(1);
  if (n == 0) return prev;
  Real cur = Real(2) * x;
  for (int k = 1; k < n; ++k) {
    const Real next = Real(2) * x * cur - Real(2 * k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// P_n(0). Odd degrees are exactly zero.
double legendre_p_zero(long n);

/// Modified Bessel functions of the second kind K_0 and K_1 for x > 0.
/// Throws std::domain_error for x <= 0 (or NaN).
double bessel_k(int order, double x);
double bessel_k0(double x);
double bessel_k1(double x);

/// Both K_0(x) and K_1(x) from one evaluation.
std::pair<double, double> bessel_k01(double x);

/// Streams e^{-x/2} L_n^alpha(x) for n = 0, 1, 2, ...
///
/// The weighted form stays bounded by max(1, ...) on the oscillatory region
/// while L_n itself grows like e^{x/2}; the unweighted recurrence is carried
/// with a separate log-scale so neither overflows nor underflows.
class ScaledLaguerre {
 public:
  ScaledLaguerre(int alpha, double x);

  long degree() const { return n_; }
  double value() const;
  void advance();

 private:
  void rescale();

  double x_;
  double alpha_;
  long n_ = 0;
  double prev_ = 0.0;
  double cur_ = 1.0;
  double log_scale_;
};

/// Streams P_n(0) for n = 0, 1, 2, ... with the ratio
/// P_{n+2}(0) = -(n+1)/(n+2) P_n(0).
class LegendreAtZero {
 public:
  long degree() const { return n_; }
  double value() const { return (n_ % 2 == 0) ? even_ : 0.0; }
  void advance() {
    if (n_ % 2 == 1) even_ *= -double(n_) / double(n_ + 1);
    ++n_;
  }

 private:
  long n_ = 0;
  double even_ = 1.0;
};

}  // namespace mok

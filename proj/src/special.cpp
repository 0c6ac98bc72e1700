#include "mok/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mok {

namespace {

constexpr double kEuler = 0.57721566490153286060651209008240243;

// Power series about the origin, used for 0 < x <= 2.
std::pair<double, double> bessel_k01_series(double x) {
  const double y = 0.25 * x * x;
  const double log_term = std::log(0.5 * x) + kEuler;

  // K0 = -(ln(x/2)+gamma) I0 + sum_k H_k y^k / (k!)^2
  // K1 = 1/x + ln(x/2) I1 - (x/4) sum_k (H_k + H_{k+1} - 2 gamma) y^k / (k!(k+1)!)
  double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  double t0 = 1.0;  // y^k / (k!)^2
  double t1 = 1.0;  // y^k / (k!(k+1)!)
  double harmonic = 0.0;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      t0 *= y / (double(k) * double(k));
      t1 *= y / (double(k) * double(k + 1));
      harmonic += 1.0 / double(k);
    }
    const double harmonic_next = harmonic + 1.0 / double(k + 1);
    i0 += t0;
    i1 += t1;
    s0 += harmonic * t0;
    s1 += (harmonic + harmonic_next - 2.0 * kEuler) * t1;
    if (t0 < 1e-18 * i0 && t1 < 1e-18 * i1) break;
  }
  i1 *= 0.5 * x;
  const double k0 = -log_term * i0 + s0;
  const double k1 = 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * s1;
  return {k0, k1};
}

// Temme's continued fraction (Steed's algorithm) for x > 2.
std::pair<double, double> bessel_k01_fraction(double x) {
  constexpr double eps = 1e-16;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

}  // namespace

double legendre_p_zero(long n) {
  if (n < 0) throw std::domain_error("legendre_p_zero: negative degree");
  if (n % 2 == 1) return 0.0;
  const long m = n / 2;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  if (m < 1000) {
    double p = 1.0;
    for (long k = 1; k <= m; ++k) p *= double(2 * k - 1) / double(2 * k);
    return sign * p;
  }
  // Gamma(m+1/2)/Gamma(m+1) ~ m^{-1/2} (1 - 1/8m + 1/128m^2 + 5/1024m^3 - 21/32768m^4)
  const double u = 1.0 / double(m);
  const double series = 1.0 + u * (-1.0 / 8.0 + u * (1.0 / 128.0 + u * (5.0 / 1024.0 - u * 21.0 / 32768.0)));
  return sign * series / std::sqrt(std::numbers::pi * double(m));
}

std::pair<double, double> bessel_k01(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k: argument must be positive");
  if (x > 745.0) return {0.0, 0.0};
  return x <= 2.0 ? bessel_k01_series(x) : bessel_k01_fraction(x);
}

double bessel_k0(double x) { return bessel_k01(x).first; }
double bessel_k1(double x) { return bessel_k01(x).second; }

double bessel_k(int order, double x) {
  switch (order) {
    case 0:
      return bessel_k0(x);
    case 1:
      return bessel_k1(x);
    default:
      throw std::domain_error("bessel_k: only orders 0 and 1 are provided");
  }
}

ScaledLaguerre::ScaledLaguerre(int alpha, double x) : x_(x), alpha_(alpha), log_scale_(-0.5 * x) {}

double ScaledLaguerre::value() const {
  if (cur_ == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(cur_)) + log_scale_), cur_);
}

void ScaledLaguerre::advance() {
  double next;
  if (n_ == 0) {
    next = 1.0 + alpha_ - x_;
  } else {
    const double k = double(n_);
    next = ((2.0 * k + 1.0 + alpha_ - x_) * cur_ - (k + alpha_) * prev_) / (k + 1.0);
  }
  prev_ = cur_;
  cur_ = next;
  ++n_;
  rescale();
}

void ScaledLaguerre::rescale() {
  constexpr double big = 0x1p+500;
  constexpr double small = 0x1p-500;
  const double m = std::max(std::abs(cur_), std::abs(prev_));
  if (m > big) {
    cur_ *= small;
    prev_ *= small;
    log_scale_ += 500.0 * std::numbers::ln2;
  } else if (m < small && m > 0.0) {
    cur_ *= big;
    prev_ *= big;
    log_scale_ -= 500.0 * std::numbers::ln2;
  }
}

}  // namespace mok

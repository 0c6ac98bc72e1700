#include "mok/oracles.hpp"

#include <cmath>
#include <numbers>

#include "mok/special.hpp"

namespace mok::oracle {

using std::numbers::pi;

namespace {

const QuadConfig kTight{1e-13, 1e-300, 60, 20000};

// Integrands are scaled by e^{x} so the quadrature never touches subnormals.
double exp_cosh_cutoff(double x) { return std::acosh(1.0 + 60.0 / x); }

}  // namespace

double bessel_k0_integral(double x) {
  auto f = [x](double t) { return std::exp(-x * (std::cosh(t) - 1.0)); };
  return std::exp(-x) * integrate_finite(f, 0.0, exp_cosh_cutoff(x), kTight).value;
}

double bessel_k1_integral(double x) {
  auto f = [x](double t) { return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(t); };
  return std::exp(-x) * integrate_finite(f, 0.0, exp_cosh_cutoff(x), kTight).value;
}

double bessel_j0_integral(double x) {
  auto f = [x](double th) { return std::cos(x * std::sin(th)); };
  return integrate_finite(f, 0.0, pi, kTight).value / pi;
}

double m_rho0_quadrature(long n) {
  auto f = [n](double t) { return std::exp(-0.5 * t) * std::cyl_bessel_j(0.0, 0.5 * t) * laguerre<double>({n, 0}, t); };
  const double upper = 120.0 + 8.0 * double(n);
  return integrate_finite(f, 0.0, upper, QuadConfig{1e-11, 1e-15}).value;
}

double m_rho2_quadrature(long n) {
  auto f = [n](double t) { return t * std::exp(-0.5 * t) * std::cyl_bessel_j(0.0, 0.5 * t) * laguerre<double>({n, 0}, t); };
  const double upper = 140.0 + 8.0 * double(n);
  return integrate_finite(f, 0.0, upper, QuadConfig{1e-11, 1e-15}).value;
}

double d1_fourier(long n, double zeta, const FieldParams& fp) {
  if (zeta == 0.0) throw std::domain_error("d1_fourier: zeta = 0");
  const double az = std::abs(zeta);
  const double e0 = energy(n, 0.0, fp);
  const double a2 = e0 * e0;
  auto g2 = [&](double k) {
    const double s = a2 + k * k;
    return std::cos(k * az) * (2.0 * k * k - a2) / (s * s * std::sqrt(s));
  };
  WynnEpsilon wynn;
  double partial = integrate_finite(g2, 0.0, 0.5 * pi / az, kTight).value;
  wynn.push(partial);
  int stable = 0;
  for (int m = 0; m < 4000; ++m) {
    const double lo = (m + 0.5) * pi / az, hi = (m + 1.5) * pi / az;
    partial += integrate_finite(g2, lo, hi, kTight).value;
    wynn.push(partial);
    if (m > 8 && wynn.change() < 1e-15 * std::max(1.0, std::abs(wynn.estimate()))) {
      if (++stable >= 3) break;
    } else {
      stable = 0;
    }
  }
  return -wynn.estimate() / (pi * az * az);
}

double damped_sine_integral(double (*g)(double, double), double param, double zeta, double eps) {
  const double az = std::abs(zeta);
  const double period = pi / az;
  const double upper = 42.0 / eps;
  auto f = [&](double k) { return g(k, param) * std::sin(k * az) * std::exp(-eps * k); };
  double sum = 0.0;
  for (double lo = 0.0; lo < upper; lo += period) sum += integrate_finite(f, lo, lo + period, kTight).value;
  return zeta > 0 ? sum : -sum;
}

double neville_at_zero(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> p = y;
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
  return p[0];
}

double d3_eps_extrapolated(long n, double zeta, const FieldParams& fp, const std::vector<double>& eps) {
  const double e0 = energy(n, 0.0, fp);
  auto g = [](double k, double a2) { return k / std::sqrt(a2 + k * k); };
  std::vector<double> values;
  values.reserve(eps.size());
  for (double e : eps) values.push_back(damped_sine_integral(g, e0 * e0, zeta, e));
  return neville_at_zero(eps, values);
}

double hermite_overlap_numeric(int m, int n, double a, double b) {
  auto f = [&](double q) { return hermite<double>(m, q + a) * hermite<double>(n, q + b) * std::exp(-q * q); };
  const double half = 14.0 + std::abs(a) + std::abs(b);
  return integrate_finite(f, -half, half, kTight, {0.0}).value;
}

double hermite_overlap_closed(int m, int n, double a, double b) {
  if (m > n) return hermite_overlap_closed(n, m, b, a);
  const int shift = n - m;
  return std::ldexp(1.0, n) * std::sqrt(pi) * std::tgamma(m + 1.0) * std::pow(b, shift) *
         laguerre<double>({m, shift}, -2.0 * a * b);
}

cplx delta_sum_rule_error(long n_max, const Point2& rho1, const FieldParams& fp) {
  const double len = fp.magnetic_length();
  const double l2 = len * len;
  const double width2 = 2.0 * (2.0 * len) * (2.0 * len);
  auto test_fn = [&](double x, double y) { return std::exp(-(x * x + y * y) / width2); };
  auto integrand = [&](double x2, double y2) -> cplx {
    const double dx = rho1.x - x2, dy = rho1.y - y2;
    const double x = (dx * dx + dy * dy) / (2.0 * l2);
    ScaledLaguerre lag(0, x);
    double sum = lag.value();
    for (long n = 1; n <= n_max; ++n) {
      lag.advance();
      sum += lag.value();
    }
    return std::polar(sum * test_fn(x2, y2) / l2, dx * (rho1.y + y2) / (2.0 * l2));
  };
  const double half = 30.0 * len;
  const QuadConfig cfg{1e-12, 1e-16, 50, 8000};
  auto row = [&](double y2) -> cplx {
    auto inner = [&](double x2) { return integrand(x2, y2); };
    return integrate_finite(inner, rho1.x - half, rho1.x + half, cfg, {rho1.x}).value;
  };
  const cplx total = integrate_finite(row, rho1.y - half, rho1.y + half, cfg, {rho1.y}).value;
  return total / (2.0 * pi) - test_fn(rho1.x, rho1.y);
}

}  // namespace mok::oracle

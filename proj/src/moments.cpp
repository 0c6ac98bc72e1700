#include "mok/moments.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>

#include "mok/special.hpp"

namespace mok {

namespace {

const double kTwoOverRootPi = 2.0 / std::sqrt(std::numbers::pi);

std::vector<double> feature_points(double eta) {
  std::vector<double> pts;
  if (eta <= 0.0) return pts;
  for (double f : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double q = f / eta;
    if (q < 8.0) pts.push_back(q);
  }
  return pts;
}

}  // namespace

double m_z(int nu, long n, const FieldParams& fp) {
  const double a = fp.a(n);
  switch (nu) {
    case 0:
      return 1.0 / a;
    case 2:
      return 1.0 / (a * a * a);
    default:
      throw std::domain_error("m_z: nu must be 0 or 2");
  }
}

double m_rho0(long n) { return std::sqrt(2.0) * legendre_p_zero(n); }

double m_rho2(long n) {
  if (n < 0) throw std::domain_error("m_rho2: negative Landau index");
  const double below = n > 0 ? double(n) * legendre_p_zero(n - 1) : 0.0;
  return std::sqrt(2.0) * ((2.0 * n + 1.0) * legendre_p_zero(n) - below - (n + 1.0) * legendre_p_zero(n + 1));
}

SeriesPolicy default_moment_policy() {
  SeriesPolicy p;
  p.term_tol = 1e-13;
  p.n_max = 1000000;
  p.consecutive_below = 3;
  p.smoothing = Smoothing::windowed_mean;
  return p;
}

MomentSums moment_sums(const FieldParams& fp, const SeriesPolicy& policy, MomentVariant variant) {
  const long shift = variant == MomentVariant::tilde ? 1 : 0;
  const double gap = fp.is_nonrelativistic() ? 0.0 : fp.eta() * fp.eta();
  // delta_n = 1/a_n - 1/a_{n+1}, written without cancellation.
  auto delta = [&](long n) {
    const double a0 = fp.a(n), a1 = fp.a(n + 1);
    return gap / (a0 * a1 * (a0 + a1));
  };

  using Terms = Eigen::Vector3d;
  LegendreAtZero legendre;
  double delta_prev = 0.0;
  auto term = [&](long n) -> Terms {
    if (n > 0) legendre.advance();
    const double p = legendre.value();
    const long k = n + shift;
    const double a = fp.a(k);
    const double d = delta(k);
    const double weight = d + double(n) * (d - delta_prev);
    delta_prev = d;
    return Terms(p / a, p / (a * a * a), p * weight);
  };
  const auto series = sum_series(term, policy);

  const double len2 = fp.magnetic_length() * fp.magnetic_length();
  MomentSums out;
  out.s00 = std::sqrt(2.0) * series.value[0];
  out.s20 = std::sqrt(2.0) * series.value[1];
  out.s02 = 2.0 * std::sqrt(2.0) * len2 * series.value[2];
  out.terms_used = series.terms_used;
  out.truncated = series.truncated;
  return out;
}

MomentSums moment_sums_integral(const FieldParams& fp, MomentVariant variant, const QuadConfig& cfg) {
  const bool nonrel = fp.is_nonrelativistic();
  const double eta2 = nonrel ? 0.0 : fp.eta() * fp.eta();
  const bool tilde = variant == MomentVariant::tilde;

  using Terms = Eigen::Vector3d;
  auto integrand = [&](double q) -> Terms {
    const double e = std::exp(-q * q);
    const double one_minus_t = -std::expm1(-eta2 * q * q);
    const double t = 1.0 - one_minus_t;
    const double t2 = t * t;
    const double g = 1.0 / std::sqrt(1.0 + t2);
    const double weight = tilde ? t : 1.0;
    const double rho = one_minus_t * (g + t * one_minus_t * g * g * g);
    return Terms(e * g, q * q * e * g, e * rho) * weight;
  };
  auto r = integrate_halfline(integrand, 1.0, cfg, feature_points(nonrel ? 0.0 : fp.eta()));

  const double len2 = fp.magnetic_length() * fp.magnetic_length();
  MomentSums out;
  out.s00 = std::sqrt(2.0) * kTwoOverRootPi * r.value[0];
  out.s20 = std::sqrt(2.0) * 2.0 * kTwoOverRootPi * r.value[1];
  out.s02 = 2.0 * std::sqrt(2.0) * len2 * kTwoOverRootPi * r.value[2];
  out.truncated = !r.ok();
  return out;
}

double legendre_generating_integral(double eta, const QuadConfig& cfg) {
  auto f = [eta](double q) {
    const double t = std::exp(-eta * eta * q * q);
    return std::exp(-q * q) / std::sqrt(1.0 + t * t);
  };
  return kTwoOverRootPi * integrate_halfline(f, 1.0, cfg, feature_points(eta)).value;
}

double legendre_weighted_integral(double eta, const QuadConfig& cfg) {
  auto f = [eta](double q) {
    const double t = std::exp(-eta * eta * q * q);
    const double s = 1.0 + t * t;
    return -std::exp(-q * q) * t * t / (s * std::sqrt(s));
  };
  return kTwoOverRootPi * integrate_halfline(f, 1.0, cfg, feature_points(eta)).value;
}

double legendre_cubic_integral(double eta, const QuadConfig& cfg) {
  auto f = [eta](double q) {
    const double t = std::exp(-eta * eta * q * q);
    return q * q * std::exp(-q * q) / std::sqrt(1.0 + t * t);
  };
  return 2.0 * kTwoOverRootPi * integrate_halfline(f, 1.0, cfg, feature_points(eta)).value;
}

MomentResult w1(const FieldParams& fp, MomentMethod method, const SeriesPolicy& policy) {
  MomentSums plain, tilde;
  if (method == MomentMethod::integral) {
    plain = moment_sums_integral(fp, MomentVariant::plain);
    tilde = moment_sums_integral(fp, MomentVariant::tilde);
  } else {
    plain = moment_sums(fp, policy, MomentVariant::plain);
    tilde = moment_sums(fp, policy, MomentVariant::tilde);
  }
  MomentResult r;
  r.method = method;
  r.s00 = plain.s00;
  r.s20 = plain.s20;
  r.s02 = plain.s02;
  r.w1_rho = plain.s02 / plain.s00;
  r.w1_z = plain.s20 / plain.s00;
  r.w1 = r.w1_rho + r.w1_z;
  r.w1_rho_t = tilde.s02 / tilde.s00;
  r.w1_z_t = tilde.s20 / tilde.s00;
  r.w1_t = r.w1_rho_t + r.w1_z_t;
  r.truncated = plain.truncated || tilde.truncated;
  return r;
}

}  // namespace mok

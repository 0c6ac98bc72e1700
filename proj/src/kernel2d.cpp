#include "mok/kernel2d.hpp"

#include <cmath>
#include <numbers>

#include "mok/special.hpp"

namespace mok {

namespace {

struct Planar {
  double x;      // rho_bar^2
  cplx envelope; // e^{i chi}/L^2 (the e^{-x/2} factor lives in the Laguerre stream)
};

Planar planar(const Point2& p, const FieldParams& fp) {
  const Point2 origin{};
  return {rho_bar_sq(p, origin, fp), std::polar(fp.beta(), gauge_phase(p, origin, fp))};
}

long turning_point(double x) { return static_cast<long>(std::ceil(0.25 * x)) + 1; }

// Sum over n of e^{-x/2} L^alpha_{n-alpha}(x) / a_{n+shift}, starting at n = alpha.
SeriesResult<double> laguerre_sum(int alpha, long shift, double x, const FieldParams& fp,
                                  const SeriesPolicy& policy) {
  // |e^{-x/2} L^alpha_m(x)| <= C(m+alpha, m), so the stopping test uses that
  // envelope rather than the oscillating term itself.
  ScaledLaguerre lag(alpha, x);
  double bound = 1.0;
  auto term = [&](long n) -> double {
    if (n < alpha) return 0.0;
    if (n > alpha) lag.advance();
    const double inv_a = 1.0 / fp.a(n + shift);
    bound = (alpha == 0 ? 1.0 : double(n)) * inv_a;
    return lag.value() * inv_a;
  };
  auto envelope = [&](double) { return bound; };
  return sum_series(term, policy, turning_point(x) + alpha, envelope);
}

SeriesResult<cplx> scaled(const SeriesResult<double>& s, cplx factor) {
  SeriesResult<cplx> out;
  out.value = factor * s.value;
  out.partial = factor * s.partial;
  out.terms_used = s.terms_used;
  out.truncated = s.truncated;
  return out;
}

// (2/sqrt(pi)) \int_0^inf e^{-q^2} t^k e^{-x t/(1-t)} (1-t)^{-power} dq, t = exp(-eta^2 q^2).
double generating_integral(double x, double eta, int k, int power, const QuadConfig& cfg) {
  if (!(x > 0.0)) throw std::domain_error("planar kernel: rho = 0 is singular");
  const double eta2 = eta * eta;
  auto f = [&](double q) {
    const double q2 = q * q;
    const double w = -std::expm1(-eta2 * q2);
    if (w <= 0.0) return 0.0;
    const double t = 1.0 - w;
    const double expo = -q2 - x * t / w;
    if (expo < -745.0) return 0.0;
    return std::exp(expo) * std::pow(t, k) / std::pow(w, power);
  };
  std::vector<double> pts;
  for (double c : {0.5, 1.0, 2.0}) {
    pts.push_back(c * std::sqrt(x) / eta);
    pts.push_back(c * std::pow(x, 0.25) / std::sqrt(eta));
    pts.push_back(c / eta);
  }
  return 2.0 / std::sqrt(std::numbers::pi) * integrate_halfline(f, 1.0, cfg, pts).value;
}

}  // namespace

SeriesPolicy default_planar_policy() {
  SeriesPolicy p;
  p.smoothing = Smoothing::windowed_mean;
  return p;
}

SeriesResult<cplx> g1_series(const Point2& p, const FieldParams& fp, const SeriesPolicy& policy) {
  const auto pl = planar(p, fp);
  return scaled(laguerre_sum(0, 0, pl.x, fp, policy), pl.envelope);
}

SeriesResult<cplx> g1_tilde_series(const Point2& p, const FieldParams& fp, const SeriesPolicy& policy) {
  const auto pl = planar(p, fp);
  return scaled(laguerre_sum(0, 1, pl.x, fp, policy), pl.envelope);
}

SeriesResult<cplx> g2_series(const Point2& p, const FieldParams& fp, const SeriesPolicy& policy) {
  const auto pl = planar(p, fp);
  return scaled(laguerre_sum(1, 0, pl.x, fp, policy), fp.eta() * r10(p, {}, fp) * pl.envelope);
}

SeriesResult<cplx> g2_tilde_series(const Point2& p, const FieldParams& fp, const SeriesPolicy& policy) {
  const auto pl = planar(p, fp);
  return scaled(laguerre_sum(1, 1, pl.x, fp, policy), fp.eta() * r10(p, {}, fp) * pl.envelope);
}

cplx g1_integral(const Point2& p, const FieldParams& fp, const QuadConfig& cfg) {
  const auto pl = planar(p, fp);
  return pl.envelope * std::exp(-0.5 * pl.x) * generating_integral(pl.x, fp.eta(), 0, 1, cfg);
}

cplx g1_tilde_integral(const Point2& p, const FieldParams& fp, const QuadConfig& cfg) {
  const auto pl = planar(p, fp);
  return pl.envelope * std::exp(-0.5 * pl.x) * generating_integral(pl.x, fp.eta(), 1, 1, cfg);
}

cplx g2_integral(const Point2& p, const FieldParams& fp, const QuadConfig& cfg) {
  const auto pl = planar(p, fp);
  return fp.eta() * r10(p, {}, fp) * pl.envelope * std::exp(-0.5 * pl.x) *
         generating_integral(pl.x, fp.eta(), 1, 2, cfg);
}

cplx g2_tilde_integral(const Point2& p, const FieldParams& fp, const QuadConfig& cfg) {
  const auto pl = planar(p, fp);
  return fp.eta() * r10(p, {}, fp) * pl.envelope * std::exp(-0.5 * pl.x) *
         generating_integral(pl.x, fp.eta(), 2, 2, cfg);
}

KernelMatrix kernel2d_matrix(const Point2& p, const FieldParams& fp, const QuadConfig& cfg, Branch sign) {
  const cplx i(0.0, 1.0);
  const cplx g1 = g1_integral(p, fp, cfg), g2 = g2_integral(p, fp, cfg);
  const cplx g1t = g1_tilde_integral(p, fp, cfg), g2t = g2_tilde_integral(p, fp, cfg);
  KernelMatrix k;
  k.core.setZero();
  k.core(0, 2) = -i * g1t;
  k.core(0, 3) = -g2t;
  k.core(1, 2) = -g2;
  k.core(1, 3) = -i * g1;
  k.core(2, 0) = i * g1t;
  k.core(2, 1) = -g2t;
  k.core(3, 0) = -g2;
  k.core(3, 1) = i * g1;
  k.regular = branch_prefactor(sign).cast<cplx>().asDiagonal() * k.core;
  k.delta_diag = 1.0;
  k.sign = sign;
  return k;
}

}  // namespace mok

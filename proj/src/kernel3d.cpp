#include "mok/kernel3d.hpp"

#include <cmath>
#include <numbers>

#include "mok/special.hpp"

namespace mok {

using std::numbers::pi;

FieldParams::FieldParams(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::domain_error("FieldParams: beta must be positive");
  length_ = 1.0 / std::sqrt(beta);
  eta_ = std::sqrt(2.0 * beta);
  omega_ = std::sqrt(2.0) / length_;
}

FieldParams FieldParams::from_tesla(double tesla) { return FieldParams(tesla / kSchwingerTesla); }

double FieldParams::a(long n) const {
  if (nonrelativistic_) return 1.0;
  const double base = std::sqrt(1.0 + 2.0 * beta_ * double(n));
  return n == 0 ? base + a0_shift_ : base;
}

FieldParams FieldParams::nonrelativistic() const {
  FieldParams out = *this;
  out.nonrelativistic_ = true;
  return out;
}

FieldParams FieldParams::with_a0_shift(double delta) const {
  FieldParams out = *this;
  out.a0_shift_ = delta;
  return out;
}

double rho_bar_sq(const Point2& p1, const Point2& p2, const FieldParams& fp) {
  const double dx = p1.x - p2.x, dy = p1.y - p2.y;
  return fp.beta() * 0.5 * (dx * dx + dy * dy);
}

double gauge_phase(const Point2& p1, const Point2& p2, const FieldParams& fp) {
  return fp.beta() * 0.5 * (p1.x - p2.x) * (p1.y + p2.y);
}

cplx r10(const Point2& p1, const Point2& p2, const FieldParams& fp) {
  const double s = 1.0 / (fp.magnetic_length() * std::sqrt(2.0));
  return {(p2.y - p1.y) * s, -(p1.x - p2.x) * s};
}

cplx r01(const Point2& p1, const Point2& p2, const FieldParams& fp) {
  const double s = 1.0 / (fp.magnetic_length() * std::sqrt(2.0));
  return {(p1.y - p2.y) * s, -(p1.x - p2.x) * s};
}

double energy(long n, double kz, const FieldParams& fp) {
  if (n < 0) throw std::domain_error("energy: negative Landau index");
  return std::sqrt(1.0 + fp.eta() * fp.eta() * double(n) + kz * kz);
}

cplx lambda_closed(long m, long n, const Point2& p1, const Point2& p2, const FieldParams& fp) {
  if (m < -1 || n < -1) throw UnsupportedIndexPair("lambda: index below -1");
  if (m == -1 || n == -1) {
    if (std::abs(m - n) > 1) throw UnsupportedIndexPair("lambda: unsupported index pair");
    return 0.0;
  }
  const double x = rho_bar_sq(p1, p2, fp);
  const double inv_l2 = fp.beta();
  const cplx envelope = std::polar(std::exp(-0.5 * x) * inv_l2, gauge_phase(p1, p2, fp));
  if (m == n) return envelope * laguerre<double>({n, 0}, x);
  if (m == n - 1) return envelope * r10(p1, p2, fp) / std::sqrt(double(n)) * laguerre<double>({n - 1, 1}, x);
  if (m == n + 1) return envelope * r01(p1, p2, fp) / std::sqrt(double(m)) * laguerre<double>({m - 1, 1}, x);
  throw UnsupportedIndexPair("lambda: unsupported index pair");
}

cplx lambda_numeric(long m, long n, const Point2& p1, const Point2& p2, const FieldParams& fp,
                    const QuadConfig& cfg) {
  if (m < 0 || n < 0) return 0.0;
  if (m > 32 || n > 32) throw std::domain_error("lambda_numeric: indices above 32");
  const double len = fp.magnetic_length();
  const auto norm = [](long k) {
    return std::sqrt(std::ldexp(std::tgamma(double(k) + 1.0) * std::sqrt(pi), int(k)));
  };
  const double pref = 1.0 / (norm(m) * norm(n) * len * len);
  const double s1 = p1.y / len, s2 = p2.y / len;
  const double freq = (p1.x - p2.x) / len;
  auto integrand = [&](double u) -> cplx {
    const double xi1 = s1 - u, xi2 = s2 - u;
    const double w = hermite<double>(int(m), xi1) * hermite<double>(int(n), xi2) *
                     std::exp(-0.5 * (xi1 * xi1 + xi2 * xi2));
    return std::polar(w, freq * u);
  };
  const double centre = 0.5 * (s1 + s2);
  const double half = 12.0 + 2.0 * std::sqrt(double(std::max(m, n)) + 1.0) + 0.5 * std::abs(s1 - s2);
  auto r = integrate_finite(integrand, centre - half, centre + half, cfg, {centre});
  return pref * r.value;
}

namespace {

double checked_abs_zeta(double zeta) {
  if (!(zeta != 0.0) || !std::isfinite(zeta)) throw std::domain_error("kernel: zeta = 0 is singular");
  return std::abs(zeta);
}

}  // namespace

double d1(long n, double zeta, const FieldParams& fp) {
  const double az = checked_abs_zeta(zeta);
  return bessel_k0(fp.a(n) * az) / pi;
}

double d2(long n, double zeta, const FieldParams& fp) { return fp.eta() * d1(n, zeta, fp); }

double d3_regular(long n, double zeta, const FieldParams& fp, const QuadConfig& cfg) {
  checked_abs_zeta(zeta);
  const double a = fp.a(n);
  const double a2 = a * a;
  return oscillatory_abel([a2](double k) { return k / std::sqrt(a2 + k * k); }, zeta, cfg).value;
}

double d3_closed(long n, double zeta, const FieldParams& fp) {
  const double az = checked_abs_zeta(zeta);
  const double a = fp.a(n);
  return std::copysign(a * bessel_k1(a * az), zeta);
}

GammaValues gamma_values(const Point3& p, const FieldParams& fp, const SeriesPolicy& policy) {
  const double az = checked_abs_zeta(p.z);
  const Point2 origin{};
  const double x = rho_bar_sq(p.planar(), origin, fp);

  // Components: K0(a_n)L_n, K0(a_n)L^1_{n-1}, a_n K1(a_n)L_n, the two a_{n+1}
  // counterparts, and the Bessel envelope used for stopping.
  using Terms = Eigen::Matrix<double, 6, 1>;
  ScaledLaguerre lag0(0, x);
  ScaledLaguerre lag1(1, x);
  double a_cur = fp.a(0);
  auto k_cur = bessel_k01(a_cur * az);
  auto term = [&](long n) -> Terms {
    if (n > 0) {
      lag0.advance();
      if (n > 1) lag1.advance();
    }
    const double a_next = fp.a(n + 1);
    const auto k_next = bessel_k01(a_next * az);
    const double l0 = lag0.value();
    const double l1 = n > 0 ? lag1.value() : 0.0;
    Terms t;
    t << k_cur.first * l0, k_cur.first * l1, a_cur * k_cur.second * l0, k_next.first * l0,
        a_next * k_next.second * l0, std::max(k_cur.first, a_cur * k_cur.second);
    a_cur = a_next;
    k_cur = k_next;
    return t;
  };
  auto envelope = [](const Terms& t) { return t[5]; };
  const auto series = sum_series(term, policy, 0, envelope);

  const double inv_l2 = fp.beta();
  const cplx base = std::polar(inv_l2 / pi, gauge_phase(p.planar(), origin, fp));
  const double sgn = p.z > 0 ? 1.0 : -1.0;
  const cplx i(0.0, 1.0);
  const Terms& s = series.value;

  GammaValues g;
  g.g1 = base * s[0];
  g.g2 = fp.eta() * r10(p.planar(), origin, fp) * base * s[1];
  g.g3_regular = i * sgn * base * s[2];
  g.g1_t = base * s[3];
  g.g2_t = fp.eta() * r01(p.planar(), origin, fp) * base * s[1];
  g.g3_t_regular = i * sgn * base * s[4];
  g.g3_delta_coeff = inv_l2 / (pi * p.z);
  g.terms_used = series.terms_used;
  g.truncated = series.truncated;
  return g;
}

cplx gamma1_highfield(const Point3& p, const FieldParams& fp) {
  const double az = checked_abs_zeta(p.z);
  const double x = rho_bar_sq(p.planar(), {}, fp);
  return std::polar(std::exp(-0.5 * x) * fp.beta() / pi * bessel_k0(az), gauge_phase(p.planar(), {}, fp));
}

cplx gamma3_highfield(const Point3& p, const FieldParams& fp) {
  const double az = checked_abs_zeta(p.z);
  const double x = rho_bar_sq(p.planar(), {}, fp);
  const double regular = std::copysign(bessel_k1(az), p.z);
  return cplx(0.0, 1.0) *
         std::polar(std::exp(-0.5 * x) * fp.beta() / pi * regular, gauge_phase(p.planar(), {}, fp));
}

Eigen::Vector4d branch_prefactor(Branch sign) {
  const double s = 1.0 / std::sqrt(2.0);
  return sign == Branch::plus ? Eigen::Vector4d(s, s, 0.0, 0.0) : Eigen::Vector4d(0.0, 0.0, -s, -s);
}

KernelMatrix assemble_kernel(const GammaValues& g, Branch sign) {
  const cplx i(0.0, 1.0);
  KernelMatrix k;
  k.core.setZero();
  k.core(0, 2) = g.g3_t_regular - i * g.g1_t;
  k.core(0, 3) = -g.g2_t;
  k.core(1, 2) = -g.g2;
  k.core(1, 3) = -g.g3_regular - i * g.g1;
  k.core(2, 0) = g.g3_t_regular + i * g.g1_t;
  k.core(2, 1) = -g.g2_t;
  k.core(3, 0) = -g.g2;
  k.core(3, 1) = -g.g3_regular + i * g.g1;
  k.regular = branch_prefactor(sign).cast<cplx>().asDiagonal() * k.core;
  k.delta_diag = 1.0;
  k.sign = sign;
  k.terms_used = g.terms_used;
  k.truncated = g.truncated;
  return k;
}

KernelMatrix kernel_matrix(const Point3& p, const FieldParams& fp, const SeriesPolicy& policy, Branch sign) {
  return assemble_kernel(gamma_values(p, fp, policy), sign);
}

}  // namespace mok

#include "mok/transform.hpp"

#include <cmath>
#include <numbers>

#include "mok/special.hpp"

namespace mok {

using std::numbers::pi;

namespace {

// sqrt(2d)/(2 pi^{3/4}), the prefactor of the longitudinal factor.
double fz_prefactor(double d) { return std::sqrt(2.0 * d) / (2.0 * std::pow(pi, 0.75)); }

double rho_norm(double d) { return 1.0 / (std::pow(pi, 0.75) * std::pow(d, 1.5)); }

}  // namespace

void GaussianSpec::validate() const {
  if (!(d > 0.0) || !std::isfinite(d)) throw std::domain_error("GaussianSpec: width must be positive");
  if (component < 1 || component > 4) throw std::domain_error("GaussianSpec: component must be 1..4");
}

double gaussian(const Point3& p, double d) {
  const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
  return std::exp(-r2 / (2.0 * d * d)) * rho_norm(d);
}

cplx f_z(double z, double d, const QuadConfig& cfg) {
  if (!(d > 0.0)) throw std::domain_error("f_z: width must be positive");
  // Even part cos(kz) and odd part -ik * i sin(kz) = k sin(kz) combine into a real integrand.
  auto integrand = [&](double k) {
    return (std::cos(k * z) + k * std::sin(k * z)) * std::exp(-0.5 * k * k * d * d) / std::sqrt(1.0 + k * k);
  };
  const auto r = integrate_halfline(integrand, 1.0 / d, cfg);
  return {2.0 * fz_prefactor(d) * r.value, 0.0};
}

RhoCoefficients f_rho_coefficients(double d, const FieldParams& fp) {
  if (!(d > 0.0)) throw std::domain_error("f_rho: width must be positive");
  const double l2 = fp.magnetic_length() * fp.magnetic_length();
  const double d2 = d * d;
  const double den = d2 * d2 + 2.0 * d2 * l2 + 2.0 * l2 * l2;
  RhoCoefficients c;
  c.ax2 = (d2 + l2) / (2.0 * den);
  c.ay2 = (d2 * d2 + d2 * l2 + l2 * l2) / (2.0 * l2 * den);
  c.b2 = (d2 + l2) / den;
  c.amplitude = 2.0 * std::sqrt(2.0 * pi) * d / std::sqrt(den);
  return c;
}

cplx f_rho_closed(double x, double y, double d, const FieldParams& fp) {
  const auto c = f_rho_coefficients(d, fp);
  return std::polar(c.amplitude * std::exp(-c.ax2 * x * x - c.ay2 * y * y), c.b2 * x * y);
}

cplx f_rho_numeric(double x, double y, double d, const FieldParams& fp, const QuadConfig& cfg) {
  const double len = fp.magnetic_length();
  const double l2 = len * len;
  const double half = 9.0 * d;
  const std::vector<double> bx{x - 4.0 * len, x, x + 4.0 * len};
  const std::vector<double> by{y - 4.0 * len, y, y + 4.0 * len};
  auto row = [&](double y2) -> cplx {
    auto inner = [&](double x2) -> cplx {
      const double dx = x - x2, dy = y - y2;
      const double mag = std::exp(-(dx * dx + dy * dy) / (4.0 * l2) - (x2 * x2 + y2 * y2) / (2.0 * d * d));
      return std::polar(mag, dx * (y + y2) / (2.0 * l2));
    };
    return integrate_finite(inner, -half, half, cfg, bx).value;
  };
  const auto r = integrate_finite(row, -half, half, cfg, by);
  return r.value / (std::sqrt(pi) * d * l2);
}

namespace {

struct SeparableMoments {
  double cz0, cz2, fz0, fz2;
  double crho0, crho2, frho0, frho2;
};

SeparableMoments separable_moments(double d, const FieldParams& fp) {
  const QuadConfig cfg{1e-13, 1e-16};
  const double p = fz_prefactor(d);
  const double d2 = d * d;
  const double scale = 1.0 / d;
  auto c0 = [&](double k) { return std::exp(-k * k * d2) / std::sqrt(1.0 + k * k); };
  auto c2 = [&](double k) { return (d2 - k * k * d2 * d2) * std::exp(-k * k * d2) / std::sqrt(1.0 + k * k); };
  auto g2 = [&](double k) {
    const double s = 1.0 + k * k;
    return (1.0 / (s * s) + k * k * d2 * d2) * std::exp(-k * k * d2);
  };
  SeparableMoments m;
  const double conv = p * std::sqrt(2.0 * pi) * d;
  m.cz0 = conv * 2.0 * integrate_halfline(c0, scale, cfg).value;
  m.cz2 = conv * 2.0 * integrate_halfline(c2, scale, cfg).value;
  m.fz0 = 2.0 * pi * p * p * std::sqrt(pi) / d;
  m.fz2 = 2.0 * pi * p * p * 2.0 * integrate_halfline(g2, scale, cfg).value;

  const auto c = f_rho_coefficients(d, fp);
  const double a = 1.0 / (2.0 * d2) + c.ax2;
  const double b = 1.0 / (2.0 * d2) + c.ay2;
  const double det = a * b + 0.25 * c.b2 * c.b2;
  m.crho0 = rho_norm(d) * c.amplitude * pi / std::sqrt(det);
  m.crho2 = m.crho0 * (a + b) / (2.0 * det);
  const double a2 = 2.0 * c.ax2, b2 = 2.0 * c.ay2;
  m.frho0 = c.amplitude * c.amplitude * pi / std::sqrt(a2 * b2);
  m.frho2 = m.frho0 * 0.5 * (1.0 / a2 + 1.0 / b2);
  return m;
}

}  // namespace

Eigen::Vector4cd psi_pm_highfield(const Point3& p, const GaussianSpec& spec, const FieldParams& fp, Branch sign,
                                  bool normalized) {
  spec.validate();
  if (spec.component != 2) throw std::domain_error("psi_pm_highfield: only component 2 is provided");
  const double s = sign == Branch::plus ? 1.0 : -1.0;
  const double f = gaussian(p, spec.d);
  const cplx frho = f_rho_closed(p.x, p.y, spec.d, fp);
  const cplx nonlocal_up = f_z(p.z, spec.d) * frho;
  const cplx nonlocal_down = f_z(-p.z, spec.d) * frho;
  double c = 1.0;
  if (normalized) {
    const auto v = variance_pm(spec, fp);
    c = 1.0 / (sign == Branch::plus ? v.norm_plus : v.norm_minus);
  }
  const double pref = std::sqrt(2.0 * c) / 2.0;
  const cplx i(0.0, 1.0);
  Eigen::Vector4cd out;
  out << 0.0, pref * (f + s * nonlocal_up), 0.0, pref * i * (f + s * nonlocal_down);
  return out;
}

VarianceResult variance_pm(const GaussianSpec& spec, const FieldParams& fp) {
  spec.validate();
  VarianceResult r;
  r.z_g = 1.5 * spec.d * spec.d;
  if (spec.component == 1 || spec.component == 3) {
    r.z_plus = r.z_minus = r.z_g;
    r.norm_plus = r.norm_minus = 1.0;
    return r;
  }
  const auto m = separable_moments(spec.d, fp);
  auto branch = [&](double s, double& z, double& norm) {
    norm = 1.0 + 2.0 * s * m.cz0 * m.crho0 + m.fz0 * m.frho0;
    const double second = r.z_g + 2.0 * s * (m.cz0 * m.crho2 + m.cz2 * m.crho0) + m.fz0 * m.frho2 + m.fz2 * m.frho0;
    z = second / norm;
  };
  const double s = spec.component == 2 ? 1.0 : -1.0;
  branch(s, r.z_plus, r.norm_plus);
  branch(-s, r.z_minus, r.norm_minus);
  return r;
}

GeneralPsi psi_pm_general(const Point3& p, const GaussianSpec& spec, const FieldParams& fp,
                          const SeriesPolicy& policy, Branch sign, const QuadConfig& cfg) {
  spec.validate();
  policy.validate();
  if (spec.component != 2) throw std::domain_error("psi_pm_general: only component 2 is provided");
  if (policy.n_max > 64) throw std::domain_error("psi_pm_general: at most 64 Landau levels");
  const long levels = policy.n_max;
  const double d = spec.d;
  const double len = fp.magnetic_length();
  const double l2 = len * len;

  // Longitudinal convolutions Z1_n (cosine) and S_n (k sine) for every level.
  auto kz_integrand = [&](double k) -> Eigen::VectorXd {
    Eigen::VectorXd v(2 * levels);
    const double g = std::exp(-0.5 * k * k * d * d);
    const double c = std::cos(k * p.z), sn = k * std::sin(k * p.z);
    for (long n = 0; n < levels; ++n) {
      const double a = fp.a(n);
      const double w = g / std::sqrt(a * a + k * k);
      v[2 * n] = c * w;
      v[2 * n + 1] = sn * w;
    }
    return v;
  };
  const Eigen::VectorXd zs =
      integrate_halfline(kz_integrand, 1.0 / d, cfg).value * (2.0 * d / std::sqrt(2.0 * pi));

  // Transverse convolutions R_{n,n} and R_{n-1,n} over an offset box around p.
  const double half = std::min(9.0 * d + std::hypot(p.x, p.y), len * (std::sqrt(8.0 * double(levels)) + 10.0));
  const double fnorm = rho_norm(d);
  auto rho_integrand = [&](double ux, double uy) -> Eigen::VectorXcd {
    Eigen::VectorXcd v(2 * levels);
    const double x2 = p.x + ux, y2 = p.y + uy;
    const double x = (ux * ux + uy * uy) / (2.0 * l2);
    const double weight = fnorm * std::exp(-(x2 * x2 + y2 * y2) / (2.0 * d * d)) / l2;
    const cplx phase = std::polar(weight, -ux * (p.y + y2) / (2.0 * l2));
    const cplx rr = cplx(uy, ux) / (len * std::sqrt(2.0));
    ScaledLaguerre lag0(0, x), lag1(1, x);
    for (long n = 0; n < levels; ++n) {
      if (n > 0) lag0.advance();
      if (n > 1) lag1.advance();
      v[2 * n] = phase * lag0.value();
      v[2 * n + 1] = n > 0 ? cplx(phase * rr * (lag1.value() / std::sqrt(double(n)))) : cplx(0.0);
    }
    return v;
  };
  auto row = [&](double uy) -> Eigen::VectorXcd {
    auto inner = [&](double ux) { return rho_integrand(ux, uy); };
    return integrate_finite(inner, -half, half, cfg, {-len, 0.0, len}).value;
  };
  const Eigen::VectorXcd rs = integrate_finite(row, -half, half, cfg, {-len, 0.0, len}).value;

  const cplx i(0.0, 1.0);
  const double eta = fp.eta();
  Eigen::Vector4cd nonlocal = Eigen::Vector4cd::Zero();
  for (long n = 0; n < levels; ++n) {
    const double z1 = zs[2 * n], sn = zs[2 * n + 1];
    const cplx rnn = rs[2 * n], rmn = rs[2 * n + 1];
    const double rootn = std::sqrt(double(n));
    nonlocal[0] += -i * rootn * eta * z1 * rmn;
    nonlocal[1] += (z1 + sn) * rnn;
    nonlocal[2] += -rootn * eta * z1 * rmn;
    nonlocal[3] += i * (z1 - sn) * rnn;
  }
  const double s = sign == Branch::plus ? 1.0 : -1.0;
  const double f = gaussian(p, d);
  const double pref = std::sqrt(2.0) / 2.0;
  GeneralPsi out;
  out.value << pref * s * nonlocal[0], pref * (f + s * nonlocal[1]), pref * s * nonlocal[2],
      pref * (i * f + s * nonlocal[3]);
  out.terms_used = levels;
  out.truncated = true;
  return out;
}

}  // namespace mok

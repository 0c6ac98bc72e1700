#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>

#include "mok/quad.hpp"

namespace mok {

using cplx = std::complex<double>;

/// Schwinger field in tesla; beta = B / kSchwingerTesla.
inline constexpr double kSchwingerTesla = 4.4e9;

/// Magnetic-field configuration in natural units (lambda_c = 1, energies in mc^2).
class FieldParams {
 public:
  explicit FieldParams(double beta);
  static FieldParams from_tesla(double tesla);

  double beta() const { return beta_; }
  double magnetic_length() const { return length_; }
  double eta() const { return eta_; }
  double omega() const { return omega_; }

  /// a_n = sqrt(1 + eta^2 n); identically 1 in nonrelativistic mode.
  double a(long n) const;

  /// Replace every a_n by 1.
  FieldParams nonrelativistic() const;
  bool is_nonrelativistic() const { return nonrelativistic_; }

  /// Debug hook: shifts a_0 by `delta` (used to confirm checks can fail).
  FieldParams with_a0_shift(double delta) const;
  double a0_shift() const { return a0_shift_; }

 private:
  double beta_;
  double length_;
  double eta_;
  double omega_;
  bool nonrelativistic_ = false;
  double a0_shift_ = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point2 planar() const { return {x, y}; }
};

/// (x^2+y^2)/(2L^2) for the separation p1 - p2.
double rho_bar_sq(const Point2& p1, const Point2& p2, const FieldParams& fp);
/// Gauge phase (x1-x2)(y1+y2)/(2L^2).
double gauge_phase(const Point2& p1, const Point2& p2, const FieldParams& fp);
/// r_{1,0} = [(y2-y1) - i(x1-x2)]/(L sqrt 2) and r_{0,1} = [(y1-y2) - i(x1-x2)]/(L sqrt 2).
cplx r10(const Point2& p1, const Point2& p2, const FieldParams& fp);
cplx r01(const Point2& p1, const Point2& p2, const FieldParams& fp);

/// E_{n,kz} = sqrt(1 + eta^2 n + kz^2).
double energy(long n, double kz, const FieldParams& fp);

class UnsupportedIndexPair : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed-form k_x integrals for the index pairs (k,k), (k-1,k) and (k,k-1).
cplx lambda_closed(long m, long n, const Point2& p1, const Point2& p2, const FieldParams& fp);

/// Direct k_x quadrature of the Hermite-Gaussian product (m, n <= 32).
cplx lambda_numeric(long m, long n, const Point2& p1, const Point2& p2, const FieldParams& fp,
                    const QuadConfig& cfg = {1e-12, 1e-15});

/// K_0(a_n|zeta|)/pi and eta K_0(a_n|zeta|)/pi; zeta = 0 is a domain error.
double d1(long n, double zeta, const FieldParams& fp);
double d2(long n, double zeta, const FieldParams& fp);

/// D_3 / (i/pi): the Abel limit of \int_0^inf k sin(k zeta)/sqrt(a_n^2+k^2) dk,
/// evaluated by lobe summation with acceleration.
double d3_regular(long n, double zeta, const FieldParams& fp, const QuadConfig& cfg = {1e-12, 1e-14});
/// The same limit in closed form: sgn(zeta) a_n K_1(a_n |zeta|).
double d3_closed(long n, double zeta, const FieldParams& fp);

struct GammaValues {
  cplx g1, g2, g3_regular;
  cplx g1_t, g2_t, g3_t_regular;
  /// Coefficient c of the on-axis term i c delta(rho_bar^2); never sampled.
  double g3_delta_coeff = 0.0;
  long terms_used = 0;
  bool truncated = false;
};

/// The six kernel functions at r (with r_2 = 0). z = 0 is a domain error.
GammaValues gamma_values(const Point3& p, const FieldParams& fp, const SeriesPolicy& policy = {});

/// Single-term (n = 0) forms valid when eta >> 1.
cplx gamma1_highfield(const Point3& p, const FieldParams& fp);
cplx gamma3_highfield(const Point3& p, const FieldParams& fp);

enum class Branch { plus, minus };

struct KernelMatrix {
  /// Full regular part, prefactor applied.
  Eigen::Matrix4cd regular;
  /// Regular part before the (beta_hat +- 1)/(2 sqrt 2) prefactor.
  Eigen::Matrix4cd core;
  /// Coefficient of delta(r) on the diagonal of the core.
  double delta_diag = 1.0;
  Branch sign = Branch::plus;
  long terms_used = 0;
  bool truncated = false;
};

/// Diagonal of (beta_hat +- 1)/(2 sqrt 2), beta_hat = diag(1,1,-1,-1).
Eigen::Vector4d branch_prefactor(Branch sign);

KernelMatrix kernel_matrix(const Point3& p, const FieldParams& fp, const SeriesPolicy& policy, Branch sign);
KernelMatrix assemble_kernel(const GammaValues& g, Branch sign);

}  // namespace mok

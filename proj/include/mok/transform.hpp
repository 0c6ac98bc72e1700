#pragma once

#include <Eigen/Core>

#include "mok/kernel3d.hpp"
#include "mok/quad.hpp"

namespace mok {

/// Gaussian e^{-r^2/2d^2}/(pi^{3/4} d^{3/2}) placed in one spinor component (1..4).
struct GaussianSpec {
  double d = 1.0;
  int component = 2;

  void validate() const;
};

struct VarianceResult {
  double z_plus = 0.0;
  double z_minus = 0.0;
  double z_g = 0.0;
  /// Norms of the unnormalized high-field wavefunctions; C = 1/norm.
  double norm_plus = 0.0;
  double norm_minus = 0.0;
};

/// Normalized initial Gaussian.
double gaussian(const Point3& p, double d);

/// Longitudinal factor of the transformed packet. The integral is real valued.
cplx f_z(double z, double d, const QuadConfig& cfg = {1e-12, 1e-15});

struct RhoCoefficients {
  double ax2, ay2, b2, amplitude;
};
RhoCoefficients f_rho_coefficients(double d, const FieldParams& fp);

/// Transverse factor: closed Gaussian form and the direct 2D convolution.
cplx f_rho_closed(double x, double y, double d, const FieldParams& fp);
cplx f_rho_numeric(double x, double y, double d, const FieldParams& fp, const QuadConfig& cfg = {1e-11, 1e-15});

/// High-field packet (component 2 only). With `normalized` false the constant
/// C is replaced by 1.
Eigen::Vector4cd psi_pm_highfield(const Point3& p, const GaussianSpec& spec, const FieldParams& fp, Branch sign,
                                  bool normalized = true);

/// Variances of the high-field packets from the separable Gaussian moments.
VarianceResult variance_pm(const GaussianSpec& spec, const FieldParams& fp);

struct GeneralPsi {
  Eigen::Vector4cd value;
  long terms_used = 0;
  bool truncated = false;
};

/// Unnormalized projection summed over Landau levels 0..policy.n_max - 1
/// (component 2 only; n_max <= 64).
GeneralPsi psi_pm_general(const Point3& p, const GaussianSpec& spec, const FieldParams& fp,
                          const SeriesPolicy& policy, Branch sign, const QuadConfig& cfg = {1e-9, 1e-13});

}  // namespace mok

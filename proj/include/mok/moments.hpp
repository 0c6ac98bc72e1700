#pragma once

#include "mok/kernel3d.hpp"
#include "mok/quad.hpp"

namespace mok {

enum class MomentVariant { plain, tilde };
enum class MomentMethod { direct_sum, integral };

/// The three Landau sums whose ratios give the second moments.
struct MomentSums {
  double s00 = 0.0;
  double s20 = 0.0;
  double s02 = 0.0;
  long terms_used = 0;
  bool truncated = false;
};

struct MomentResult {
  double w1_rho = 0.0, w1_z = 0.0, w1 = 0.0;
  double w1_rho_t = 0.0, w1_z_t = 0.0, w1_t = 0.0;
  double s00 = 0.0, s20 = 0.0, s02 = 0.0;
  MomentMethod method = MomentMethod::integral;
  bool truncated = false;
};

/// z-moments of K_0(a_n|z|): nu = 0 gives 1/a_n, nu = 2 gives 1/a_n^3.
double m_z(int nu, long n, const FieldParams& fp);

/// Zeroth transverse moment sqrt(2) P_n(0).
double m_rho0(long n);
/// Second transverse moment in units of 2L^2: sqrt(2)[(2n+1)P_n(0) - n P_{n-1}(0) - (n+1)P_{n+1}(0)].
double m_rho2(long n);

/// Policy used by the direct sums: tight per-term cutoff with windowed averaging,
/// since the Legendre weights only decay like n^{-1/2}.
SeriesPolicy default_moment_policy();

MomentSums moment_sums(const FieldParams& fp, const SeriesPolicy& policy = default_moment_policy(),
                       MomentVariant variant = MomentVariant::plain);

MomentSums moment_sums_integral(const FieldParams& fp, MomentVariant variant = MomentVariant::plain,
                                const QuadConfig& cfg = {1e-12, 1e-15});

/// (2/sqrt(pi)) \int_0^inf e^{-q^2} (1+t^2)^{-1/2} dq with t = exp(-eta^2 q^2).
double legendre_generating_integral(double eta, const QuadConfig& cfg = {1e-12, 1e-15});
/// The n-weighted companion, (2/sqrt(pi)) \int e^{-q^2} (-t^2)(1+t^2)^{-3/2} dq.
double legendre_weighted_integral(double eta, const QuadConfig& cfg = {1e-12, 1e-15});
/// (4/sqrt(pi)) \int_0^inf q^2 e^{-q^2} (1+t^2)^{-1/2} dq.
double legendre_cubic_integral(double eta, const QuadConfig& cfg = {1e-12, 1e-15});

MomentResult w1(const FieldParams& fp, MomentMethod method = MomentMethod::integral,
                const SeriesPolicy& policy = default_moment_policy());

}  // namespace mok

#pragma once

#include <vector>

#include "mok/kernel3d.hpp"
#include "mok/quad.hpp"

// Independent reference evaluations. Each routine trades speed for a
// derivation path that shares as little as possible with the production code.
namespace mok::oracle {

/// K_0(x) = \int_0^inf exp(-x cosh t) dt.
double bessel_k0_integral(double x);
/// K_1(x) = \int_0^inf exp(-x cosh t) cosh t dt.
double bessel_k1_integral(double x);
/// J_0(x) = (1/pi) \int_0^pi cos(x sin theta) d theta.
double bessel_j0_integral(double x);

/// \int_0^inf e^{-t/2} J_0(t/2) L_n(t) dt.
double m_rho0_quadrature(long n);
/// \int_0^inf t e^{-t/2} J_0(t/2) L_n(t) dt.
double m_rho2_quadrature(long n);

/// (1/2pi) \int e^{i k zeta}/E_{n,k} dk after two integrations by parts,
/// summed lobe by lobe with epsilon acceleration.
double d1_fourier(long n, double zeta, const FieldParams& fp);

/// Damped integral \int_0^inf g(k) sin(k zeta) e^{-eps k} dk by direct lobe summation.
double damped_sine_integral(double (*g)(double, double), double param, double zeta, double eps);

/// Abel limit of \int_0^inf k sin(k zeta)/sqrt(a_n^2+k^2) dk by polynomial
/// extrapolation in eps of damped integrals at the given eps values.
double d3_eps_extrapolated(long n, double zeta, const FieldParams& fp,
                           const std::vector<double>& eps = {0.1, 0.075, 0.05, 0.0375, 0.025, 0.0125, 0.00625});

/// Neville extrapolation of samples (x_i, y_i) to x = 0.
double neville_at_zero(const std::vector<double>& x, const std::vector<double>& y);

/// \int H_m(q+a) H_n(q+b) e^{-q^2} dq by quadrature, and its closed form.
double hermite_overlap_numeric(int m, int n, double a, double b);
double hermite_overlap_closed(int m, int n, double a, double b);

/// (1/2pi) \int sum_{n<=N} Lambda_{n,n}(rho1, rho2) f(rho2) d^2 rho2 for the
/// Gaussian f(rho) = exp(-rho^2/(2 (2L)^2)); returns the value minus f(rho1).
cplx delta_sum_rule_error(long n_max, const Point2& rho1, const FieldParams& fp);

}  // namespace mok::oracle

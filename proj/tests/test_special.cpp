#include <doctest.h>

#include <cmath>
#include <random>

#include "mok/oracles.hpp"
#include "mok/special.hpp"

using namespace mok;

TEST_SUITE("special") {
  TEST_CASE("low-order Laguerre and Hermite polynomials match explicit forms") {
    for (double x : {-1.3, 0.0, 0.4, 2.7, 9.0}) {
      CHECK(laguerre<double>({2, 0}, x) == doctest::Approx(0.5 * (x * x - 4 * x + 2)).epsilon(1e-14));
      CHECK(laguerre<double>({1, 1}, x) == doctest::Approx(2 - x).epsilon(1e-14));
      CHECK(laguerre<double>({-1, 1}, x) == 0.0);
      CHECK(hermite<double>(3, x) == doctest::Approx(8 * x * x * x - 12 * x).epsilon(1e-14));
    }
  }

  TEST_CASE("Laguerre recurrence agrees in long double") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 30.0);
    for (int k = 0; k < 50; ++k) {
      const double x = u(rng);
      const long n = 1 + long(rng() % 40);
      const double hi = double(laguerre<long double>({n, 1}, (long double)x));
      CHECK(laguerre<double>({n, 1}, x) == doctest::Approx(hi).epsilon(1e-9).scale(std::exp(x / 2)));
    }
  }

  TEST_CASE("P_n(0) values, parity and large-degree branch") {
    CHECK(legendre_p_zero(0) == 1.0);
    CHECK(legendre_p_zero(7) == 0.0);
    CHECK(legendre_p_zero(4) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    LegendreAtZero s;
    for (long n = 0; n < 2000; ++n, s.advance()) CHECK(s.value() == doctest::Approx(legendre_p_zero(n)).epsilon(1e-12));
    // |P_{2m}(0)| ~ 1/sqrt(pi m)
    const double m = 5e5;
    CHECK(std::abs(legendre_p_zero(long(2 * m))) * std::sqrt(M_PI * m) == doctest::Approx(1.0).epsilon(1e-5));
  }

  TEST_CASE("Bessel K matches the integral representation on both branches") {
    for (double x : {1e-3, 0.3, 1.99, 2.0, 2.01, 5.0, 30.0, 300.0}) {
      CHECK(bessel_k0(x) == doctest::Approx(oracle::bessel_k0_integral(x)).epsilon(1e-12));
      CHECK(bessel_k1(x) == doctest::Approx(oracle::bessel_k1_integral(x)).epsilon(1e-12));
    }
    CHECK(bessel_k0(800.0) == 0.0);
    CHECK_THROWS_AS(bessel_k0(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k1(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(bessel_k(2, 1.0), std::domain_error);
  }

  TEST_CASE("J0 integral representation agrees with the standard library") {
    for (double x : {0.0, 0.7, 3.0, 25.0}) CHECK(oracle::bessel_j0_integral(x) == doctest::Approx(std::cyl_bessel_j(0.0, x)).scale(1.0).epsilon(1e-12));
  }

  TEST_CASE("Bessel Wronskian-type identity K1' = -K0 - K1/x") {
    for (double x : {0.5, 1.5, 2.5, 8.0}) {
      const double h = 1e-5 * x;
      const double deriv = (bessel_k1(x + h) - bessel_k1(x - h)) / (2 * h);
      CHECK(deriv == doctest::Approx(-bessel_k0(x) - bessel_k1(x) / x).epsilon(1e-7));
    }
  }

  TEST_CASE("ScaledLaguerre streams e^{-x/2} L_n^alpha without overflow") {
    for (int alpha : {0, 1})
      for (double x : {0.5, 20.0}) {
        ScaledLaguerre s(alpha, x);
        for (long n = 0; n < 30; ++n, s.advance())
          CHECK(s.value() == doctest::Approx(std::exp(-x / 2) * laguerre<double>({n, alpha}, x)).epsilon(1e-10).scale(1.0));
      }
    ScaledLaguerre big(0, 1500.0);
    for (int i = 0; i < 5000; ++i) big.advance();
    CHECK(std::isfinite(big.value()));
    CHECK(std::abs(big.value()) <= 1.0);
  }

  TEST_CASE("Hermite overlap closed form agrees with quadrature") {
    CHECK(oracle::hermite_overlap_closed(2, 5, 0.3, -0.7) ==
          doctest::Approx(oracle::hermite_overlap_numeric(2, 5, 0.3, -0.7)).epsilon(1e-10));
    CHECK(oracle::hermite_overlap_closed(4, 1, -0.2, 0.9) ==
          doctest::Approx(oracle::hermite_overlap_numeric(4, 1, -0.2, 0.9)).epsilon(1e-10));
  }
}

#include <doctest.h>

#include <cmath>

#include "mok/moments.hpp"
#include "mok/oracles.hpp"

using namespace mok;

TEST_SUITE("moments") {
  TEST_CASE("z moments of K0(a|z|)") {
    const FieldParams fp(0.5);
    CHECK(m_z(0, 3, fp) == doctest::Approx(1.0 / fp.a(3)));
    CHECK(m_z(2, 3, fp) == doctest::Approx(std::pow(fp.a(3), -3)));
    CHECK_THROWS(m_z(1, 0, fp));
  }

  TEST_CASE("transverse moments agree with Bessel-weighted quadrature") {
    for (long n = 0; n <= 6; ++n) {
      CHECK(m_rho0(n) == doctest::Approx(oracle::m_rho0_quadrature(n)).scale(1.0).epsilon(1e-9));
      CHECK(m_rho2(n) == doctest::Approx(oracle::m_rho2_quadrature(n)).scale(1.0).epsilon(1e-9));
    }
  }

  TEST_CASE("generating integrals: small and large eta") {
    CHECK(legendre_generating_integral(1e-4) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-7));
    CHECK(legendre_weighted_integral(1e-4) == doctest::Approx(-1 / std::sqrt(8.0)).epsilon(1e-7));
    CHECK(legendre_cubic_integral(1e-4) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(legendre_generating_integral(100.0) == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("direct and integral sums agree across fields") {
    for (double b : {1e-2, 0.3, 30.0}) {
      const FieldParams fp(b);
      for (auto v : {MomentVariant::plain, MomentVariant::tilde}) {
        const auto d = moment_sums(fp, default_moment_policy(), v);
        const auto i = moment_sums_integral(fp, v);
        CHECK(d.s00 == doctest::Approx(i.s00).epsilon(1e-7));
        CHECK(d.s20 == doctest::Approx(i.s20).epsilon(1e-7));
        CHECK(d.s02 == doctest::Approx(i.s02).epsilon(1e-7));
      }
    }
  }

  TEST_CASE("limits and additivity of the normalized moments") {
    const auto lo = w1(FieldParams(1e-6));
    CHECK(lo.w1 == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(lo.w1_rho == doctest::Approx(2.0).epsilon(1e-3));
    const auto hi = w1(FieldParams(1e5));
    CHECK(hi.w1_z == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(hi.w1_rho == doctest::Approx(2e-5).epsilon(0.05));
    for (double b : {1e-3, 1.0, 1e3}) {
      const auto r = w1(FieldParams(b));
      CHECK(std::abs(r.w1 - r.w1_rho - r.w1_z) <= 1e-12 * r.w1);
      CHECK(std::abs(r.w1_t - r.w1_rho_t - r.w1_z_t) <= 1e-12 * std::abs(r.w1_t));
    }
  }

  TEST_CASE("tilde moments fall off at high field but only algebraically") {
    const double t3 = w1(FieldParams(1e3)).w1_t, t4 = w1(FieldParams(1e4)).w1_t;
    CHECK(t4 < t3);
    CHECK(t3 / t4 == doctest::Approx(10.0).epsilon(0.05));
  }

  TEST_CASE("nonrelativistic mode has no transverse widening") {
    const auto fp = FieldParams(2.0).nonrelativistic();
    CHECK(std::abs(moment_sums(fp).s02) <= 1e-12);
    CHECK(std::abs(w1(fp, MomentMethod::direct_sum).w1_rho) <= 1e-12);
  }
}

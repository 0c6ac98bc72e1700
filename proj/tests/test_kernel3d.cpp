#include <doctest.h>

#include <cmath>
#include <random>

#include "mok/kernel3d.hpp"
#include "mok/oracles.hpp"
#include "mok/special.hpp"

using namespace mok;

TEST_SUITE("kernel3d") {
  TEST_CASE("field parameters") {
    const FieldParams fp(2.0);
    CHECK(fp.magnetic_length() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(fp.eta() == doctest::Approx(2.0));
    CHECK(fp.a(3) == doctest::Approx(std::sqrt(13.0)));
    CHECK(FieldParams::from_tesla(4.4e9).beta() == doctest::Approx(1.0));
    CHECK(fp.nonrelativistic().a(7) == 1.0);
    CHECK(fp.with_a0_shift(1e-3).a(0) == doctest::Approx(1.001));
    CHECK(fp.with_a0_shift(1e-3).a(1) == fp.a(1));
    CHECK_THROWS(FieldParams(0.0));
    CHECK_THROWS(FieldParams(-1.0));
  }

  TEST_CASE("geometry helpers") {
    const FieldParams fp(0.5);
    const Point2 a{0.3, -0.4}, b{-0.1, 0.2};
    CHECK(r01(a, b, fp) == -std::conj(r10(a, b, fp)));
    CHECK(std::norm(r10(a, b, fp)) == doctest::Approx(rho_bar_sq(a, b, fp)));
    CHECK(gauge_phase(a, a, fp) == 0.0);
    CHECK(energy(2, 0.5, fp) == doctest::Approx(std::sqrt(1 + 2 + 0.25)));
  }

  TEST_CASE("Lambda closed forms agree with quadrature and are Hermitian") {
    std::mt19937 rng(3);
    const FieldParams fp(1.3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 6; ++k) {
      const Point2 p1{u(rng), u(rng)}, p2{u(rng), u(rng)};
      for (long n = 0; n <= 5; ++n)
        for (long m : {n - 1, n, n + 1}) {
          if (m < 0) continue;
          const cplx c = lambda_closed(m, n, p1, p2, fp);
          const cplx q = lambda_numeric(m, n, p1, p2, fp);
          CHECK(std::abs(c - q) <= 1e-9 * std::max(1.0, std::abs(c)));
          const cplx swapped = lambda_closed(n, m, p2, p1, fp);
          CHECK(std::abs(c - std::conj(swapped)) <= 1e-12 * std::max(1.0, std::abs(c)));
        }
    }
    CHECK_THROWS_AS(lambda_closed(0, 2, {}, {0.1, 0.1}, fp), UnsupportedIndexPair);
  }

  TEST_CASE("D functions: closed forms, parity and the eta relation") {
    const FieldParams fp(0.7);
    for (long n : {0L, 2L})
      for (double z : {0.4, 1.5}) {
        CHECK(d1(n, z, fp) == doctest::Approx(bessel_k0(fp.a(n) * z) / M_PI).epsilon(1e-14));
        CHECK(d1(n, -z, fp) == d1(n, z, fp));
        CHECK(d2(n, z, fp) == doctest::Approx(fp.eta() * d1(n, z, fp)).epsilon(1e-15));
        CHECK(d3_closed(n, -z, fp) == -d3_closed(n, z, fp));
        CHECK(d3_regular(n, z, fp) == doctest::Approx(d3_closed(n, z, fp)).epsilon(1e-8));
        CHECK(d1(n, z, fp) == doctest::Approx(oracle::d1_fourier(n, z, fp)).epsilon(1e-9));
      }
    CHECK_THROWS_AS(d1(0, 0.0, fp), std::domain_error);
    CHECK_THROWS_AS(d3_regular(0, 0.0, fp), std::domain_error);
  }

  TEST_CASE("Gamma functions: reality on y=0, z parity, high-field collapse") {
    const FieldParams fp(3.0);
    const auto g = gamma_values({0.4, 0.0, 0.6}, fp);
    const auto gm = gamma_values({0.4, 0.0, -0.6}, fp);
    CHECK(std::abs(g.g1.imag()) <= 1e-15 * std::abs(g.g1));
    CHECK(std::abs(g.g1 - gm.g1) <= 1e-13 * std::abs(g.g1));
    CHECK(std::abs(g.g3_regular + gm.g3_regular) <= 1e-13 * std::abs(g.g3_regular));
    CHECK_FALSE(g.truncated);
    CHECK_THROWS_AS(gamma_values({0.1, 0.1, 0.0}, fp), std::domain_error);

    const FieldParams hi(1e4);
    const Point3 p{0.004, -0.007, 0.9};
    const auto gh = gamma_values(p, hi);
    CHECK(std::abs(gh.g1 - gamma1_highfield(p, hi)) <= 1e-6 * std::abs(gh.g1));
    CHECK(std::abs(gh.g3_regular - gamma3_highfield(p, hi)) <= 1e-6 * std::abs(gh.g3_regular));
  }

  TEST_CASE("Gamma1 approaches the field-free kernel K1(r)/(pi r) at low field") {
    const FieldParams fp(1e-2);
    for (auto p : {Point3{0.0, 0.0, 0.83}, Point3{0.6, 0.0, 0.57}}) {
      const double r = std::sqrt(p.x * p.x + p.z * p.z);
      CHECK(gamma_values(p, fp).g1.real() == doctest::Approx(bessel_k1(r) / (M_PI * r)).epsilon(0.01));
    }
  }

  TEST_CASE("kernel matrix structure") {
    const FieldParams fp(0.8);
    const auto g = gamma_values({0.3, 0.0, -0.5}, fp);
    const auto plus = assemble_kernel(g, Branch::plus);
    const auto minus = assemble_kernel(g, Branch::minus);
    const cplx i(0, 1);
    CHECK(std::abs(plus.core(0, 2) + plus.core(2, 0) - 2.0 * g.g3_t_regular) < 1e-14);
    CHECK(std::abs(plus.core(2, 0) - plus.core(0, 2) - 2.0 * i * g.g1_t) < 1e-14);
    CHECK(std::abs(plus.core(3, 1) - plus.core(1, 3) - 2.0 * i * g.g1) < 1e-14);
    CHECK((plus.core - minus.core).norm() == 0.0);
    // Upper rows survive the plus projector, lower rows the minus projector.
    CHECK(plus.regular.bottomRows(2).norm() == 0.0);
    CHECK(minus.regular.topRows(2).norm() == 0.0);
    CHECK((plus.regular.topRows(2) - plus.core.topRows(2) / std::sqrt(2.0)).norm() < 1e-15);
    CHECK(plus.core.diagonal().norm() == 0.0);
  }
}

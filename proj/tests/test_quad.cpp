#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <numbers>

#include "mok/quad.hpp"

using namespace mok;

TEST_SUITE("quad") {
  TEST_CASE("finite integrals of smooth and kinked integrands") {
    auto r = integrate_finite([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(r.ok());
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    auto k = integrate_finite([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {}, {0.3});
    CHECK(k.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-12));
  }

  TEST_CASE("vector and complex valued integrands") {
    auto v = integrate_finite([](double x) { return Eigen::Vector2d(x, x * x); }, 0.0, 2.0);
    CHECK(v.value[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(v.value[1] == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    auto c = integrate_finite([](double x) { return std::polar(1.0, x); }, 0.0, std::numbers::pi);
    CHECK(c.value.real() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(c.value.imag() == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("half-line integrals") {
    auto g = integrate_halfline([](double x) { return std::exp(-x * x); }, 1.0);
    CHECK(g.value == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-11));
    auto a = integrate_halfline([](double x) { return 1.0 / (1.0 + x * x); }, 1.0);
    CHECK(a.value == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
  }

  TEST_CASE("budget exhaustion is reported, not hidden") {
    QuadConfig tight{1e-15, 0.0, 3, 4};
    auto r = integrate_finite([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, 0.0, 1.0, tight);
    CHECK_FALSE(r.ok());
  }

  TEST_CASE("Wynn epsilon accelerates an alternating series") {
    WynnEpsilon w;
    double s = 0.0;
    for (int k = 0; k < 14; ++k) {
      s += (k % 2 ? -1.0 : 1.0) / (k + 1.0);
      w.push(s);
    }
    CHECK(w.estimate() == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  }

  TEST_CASE("Abel-regularized sine integral of k/sqrt(1+k^2) is K1") {
    auto g = [](double k) { return k / std::sqrt(1.0 + k * k); };
    for (double z : {0.5, 1.0, 2.0}) {
      const auto r = oscillatory_abel(g, z, {1e-12, 1e-14});
      CHECK(r.value == doctest::Approx(std::cyl_bessel_k(1.0, z)).epsilon(1e-8));
      CHECK(oscillatory_abel(g, -z, {1e-12, 1e-14}).value == doctest::Approx(-r.value).epsilon(1e-12));
    }
    CHECK_THROWS_AS(oscillatory_abel(g, 0.0), std::domain_error);
  }

  TEST_CASE("series stop on tolerance and flag truncation") {
    SeriesPolicy p;
    p.term_tol = 1e-14;
    auto geo = sum_series([](long n) { return std::pow(0.5, double(n)); }, p);
    CHECK_FALSE(geo.truncated);
    CHECK(geo.value == doctest::Approx(2.0).epsilon(1e-13));

    SeriesPolicy q;
    q.n_max = 1000;
    auto harm = sum_series([](long n) { return 1.0 / (n + 1.0); }, q);
    CHECK(harm.truncated);
    CHECK(harm.terms_used == 1000);
  }

  TEST_CASE("windowed mean recovers the Abel sum of an oscillating series") {
    SeriesPolicy p;
    p.n_max = 4000;
    p.smoothing = Smoothing::windowed_mean;
    auto r = sum_series([](long n) { return (n % 2 ? -1.0 : 1.0) / std::sqrt(n + 1.0); }, p);
    // eta(1/2) = (1 - sqrt 2) zeta(1/2)
    CHECK(r.value == doctest::Approx(0.6048986434216304).epsilon(1e-4));
  }

  TEST_CASE("invalid policy is rejected") {
    SeriesPolicy bad;
    bad.n_max = 0;
    CHECK_THROWS(bad.validate());
  }
}

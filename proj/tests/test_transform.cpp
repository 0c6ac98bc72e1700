#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mok/transform.hpp"

using namespace mok;
using std::numbers::pi;

namespace {

// Normalized one- and two-dimensional factors of the initial Gaussian.
double gz(double z, double d) { return std::exp(-z * z / (2 * d * d)) / (std::pow(pi, 0.25) * std::sqrt(d)); }
double grho(double x, double y, double d) { return std::exp(-(x * x + y * y) / (2 * d * d)) / (std::sqrt(pi) * d); }

template <typename F>
double plane(F&& f, double half) {
  const QuadConfig cfg{1e-10, 1e-14};
  auto row = [&](double y) { return integrate_finite([&](double x) { return f(x, y); }, -half, half, cfg).value; };
  return integrate_finite(row, -half, half, cfg).value;
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("initial Gaussian is normalized and separable") {
    const double d = 0.7;
    const Point3 p{0.2, -0.3, 0.5};
    CHECK(gaussian(p, d) == doctest::Approx(gz(p.z, d) * grho(p.x, p.y, d)).epsilon(1e-14));
    auto sq = integrate_finite([&](double z) { return gz(z, d) * gz(z, d); }, -12 * d, 12 * d).value;
    CHECK(sq == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("transverse factor: closed form equals convolution") {
    const FieldParams fp(4.0);
    for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{0.3, -0.2}})
      CHECK(std::abs(f_rho_closed(x, y, 0.6, fp) - f_rho_numeric(x, y, 0.6, fp)) < 1e-9);
  }

  TEST_CASE("transverse factor tends to a local Gaussian for d >> L") {
    const FieldParams fp(1e4);
    const auto c = f_rho_coefficients(3.0, fp);
    CHECK(c.ax2 == doctest::Approx(1.0 / (2 * 9.0)).epsilon(1e-3));
    CHECK(c.b2 == doctest::Approx(1.0 / 9.0).epsilon(1e-3));
  }

  TEST_CASE("longitudinal factor: real, even part symmetric") {
    const double d = 0.5;
    for (double z : {0.1, 0.8}) {
      const cplx a = f_z(z, d), b = f_z(-z, d);
      CHECK(a.imag() == 0.0);
      CHECK(a.real() != doctest::Approx(b.real()));
    }
    CHECK_THROWS(f_z(0.3, 0.0));
  }

  TEST_CASE("variance norms and second moments match direct quadrature") {
    const double d = 0.6;
    const FieldParams fp(5.0);
    const QuadConfig cfg{1e-12, 1e-16};
    const std::vector<double> kink{0.0};  // F_z has a derivative jump at z = 0
    const double zh = 14 * d + 40.0;  // F_z inherits e^{-|z|} tails from the kernel
    const double i1 = integrate_finite([&](double z) { return gz(z, d) * f_z(z, d).real(); }, -zh, zh, cfg, kink).value;
    const double i1z = integrate_finite([&](double z) { return z * z * gz(z, d) * f_z(z, d).real(); }, -zh, zh, cfg, kink).value;
    const double i3 = integrate_finite([&](double z) { return std::norm(f_z(z, d)); }, -zh, zh, cfg, kink).value;
    const double i3z = integrate_finite([&](double z) { return z * z * std::norm(f_z(z, d)); }, -zh, zh, cfg, kink).value;
    const double h = 10 * d;
    const double i2 = plane([&](double x, double y) { return grho(x, y, d) * f_rho_closed(x, y, d, fp).real(); }, h);
    const double i2r = plane([&](double x, double y) { return (x * x + y * y) * grho(x, y, d) * f_rho_closed(x, y, d, fp).real(); }, h);
    const double i4 = plane([&](double x, double y) { return std::norm(f_rho_closed(x, y, d, fp)); }, h);
    const double i4r = plane([&](double x, double y) { return (x * x + y * y) * std::norm(f_rho_closed(x, y, d, fp)); }, h);

    const auto v = variance_pm(GaussianSpec{d, 2}, fp);
    const double norm_plus = 1 + 2 * i1 * i2 + i3 * i4;
    const double norm_minus = 1 - 2 * i1 * i2 + i3 * i4;
    CHECK(v.norm_plus == doctest::Approx(norm_plus).epsilon(1e-8));
    CHECK(v.norm_minus == doctest::Approx(norm_minus).epsilon(1e-8));
    const double second_plus = 1.5 * d * d + 2 * (i1 * i2r + i1z * i2) + i3 * i4r + i3z * i4;
    CHECK(v.z_plus == doctest::Approx(second_plus / norm_plus).epsilon(1e-8));
    CHECK(v.z_g == 1.5 * d * d);
  }

  TEST_CASE("variance components: 1 and 3 are untouched, 4 swaps the branches") {
    const FieldParams fp(50.0);
    const auto v2 = variance_pm(GaussianSpec{0.5, 2}, fp);
    const auto v4 = variance_pm(GaussianSpec{0.5, 4}, fp);
    const auto v1 = variance_pm(GaussianSpec{0.5, 1}, fp);
    CHECK(v4.z_plus == doctest::Approx(v2.z_minus));
    CHECK(v4.z_minus == doctest::Approx(v2.z_plus));
    CHECK(v1.z_plus == v1.z_g);
    CHECK_THROWS(variance_pm(GaussianSpec{0.5, 5}, fp));
    CHECK_THROWS(variance_pm(GaussianSpec{-1.0, 2}, fp));
  }

  TEST_CASE("transformed packets are wider than the initial one") {
    for (double d : {0.25, 1.0})
      for (double b : {1.0, 30.0, 1e4}) {
        const auto v = variance_pm(GaussianSpec{d, 2}, FieldParams(b));
        CHECK(v.z_plus >= v.z_g);
        CHECK(v.z_minus >= v.z_g);
      }
  }

  TEST_CASE("high-field packet: component layout and fourth-component mirror") {
    const FieldParams fp(100.0);
    const GaussianSpec spec{0.5, 2};
    const Point3 p{0.1, 0.2, 0.3}, q{0.1, 0.2, -0.3};
    const auto a = psi_pm_highfield(p, spec, fp, Branch::plus);
    const auto b = psi_pm_highfield(q, spec, fp, Branch::plus);
    CHECK(a[0] == cplx(0.0));
    CHECK(a[2] == cplx(0.0));
    // psi_4(z) = i psi_2(-z) holds because the local Gaussian is even in z.
    CHECK(std::abs(a[3] - cplx(0, 1) * b[1]) < 1e-14);
    CHECK_THROWS(psi_pm_highfield(p, GaussianSpec{0.5, 1}, fp, Branch::plus));
  }

  TEST_CASE("general packet reduces to the high-field form with one Landau level") {
    const FieldParams fp(100.0);
    SeriesPolicy one;
    one.n_max = 1;
    const Point3 p{0.2, 0.1, 0.4};
    for (Branch s : {Branch::plus, Branch::minus}) {
      const auto gen = psi_pm_general(p, GaussianSpec{0.5, 2}, fp, one, s).value;
      const auto hf = psi_pm_highfield(p, GaussianSpec{0.5, 2}, fp, s, false);
      CHECK((gen - hf).norm() <= 1e-7 * hf.norm());
    }
  }
}

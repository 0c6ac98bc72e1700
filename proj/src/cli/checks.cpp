#include "mok/cli/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mok/cli/commands.hpp"
#include "mok/kernel2d.hpp"
#include "mok/moments.hpp"
#include "mok/oracles.hpp"
#include "mok/special.hpp"
#include "mok/transform.hpp"

namespace mok::cli {

namespace {

using std::numbers::pi;

FieldParams field(double beta, const CheckOptions& o) {
  FieldParams fp(beta);
  return o.a0_shift != 0.0 ? fp.with_a0_shift(o.a0_shift) : fp;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Tracks the worst error against a tolerance.
struct Worst {
  Worst(std::string l, double t) : label(std::move(l)), tol(t) {}

  std::string label;
  double tol;
  double value = 0.0;
  std::string where;

  void add(double err, const std::string& at = {}) {
    if (!(err <= value)) {  // NaN counts as worst
      value = err;
      where = at;
    }
  }
  bool ok() const { return value <= tol; }
  std::string text() const {
    std::string s = label + " " + fmt(value) + " (tol " + fmt(tol) + ")";
    if (!ok() && !where.empty()) s += " at " + where;
    return s;
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

CheckOutcome combine(std::initializer_list<const Worst*> parts, std::string extra = {}) {
  CheckOutcome out{true, false, {}};
  for (const Worst* w : parts) {
    out.pass = out.pass && w->ok();
    out.detail += (out.detail.empty() ? "" : "; ") + w->text();
  }
  if (!extra.empty()) out.detail += "; " + extra;
  return out;
}

CheckOutcome skipped_in_quick() { return {true, true, "skipped in quick mode"}; }

// 1
CheckOutcome low_field_limit(const CheckOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = w1(field(1e-6, o), MomentMethod::integral);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Worst w{"w1 rel err vs 3", 0.01};
  w.add(rel(r.w1, 3.0));
  Worst t{"runtime s", 1.0};
  t.add(secs);
  return combine({&w, &t}, "w1 = " + fmt(r.w1));
}

// 2
CheckOutcome high_field_limit(const CheckOptions& o) {
  const auto r = w1(field(1e4, o), MomentMethod::integral);
  Worst z{"w1_z rel err vs 1", 0.02}, p{"w1_rho rel err vs 2e-4", 0.2};
  z.add(rel(r.w1_z, 1.0));
  p.add(rel(r.w1_rho, 2e-4));
  return combine({&z, &p});
}

// 3
CheckOutcome moment_methods(const CheckOptions& o) {
  Worst w{"max rel diff direct vs integral", 1e-6};
  for (double b : {1e-3, 1e-1, 1.0, 10.0, 1e3}) {
    const auto fp = field(b, o);
    const auto d = moment_sums(fp);
    const auto g = moment_sums_integral(fp);
    const std::string at = "beta=" + fmt(b);
    w.add(rel(d.s00, g.s00), at + " s00");
    w.add(rel(d.s20, g.s20), at + " s20");
    w.add(rel(d.s02, g.s02), at + " s02");
  }
  return combine({&w});
}

// 4
CheckOutcome generating_limits(const CheckOptions&) {
  Worst a{"first at eta=1e-4", 1e-6}, b{"first at eta=100", 0.02}, c{"second at eta=1e-4", 1e-6};
  a.add(rel(legendre_generating_integral(1e-4), 1.0 / std::sqrt(2.0)));
  b.add(rel(legendre_generating_integral(100.0), 1.0));
  c.add(rel(legendre_weighted_integral(1e-4), -1.0 / std::sqrt(8.0)));
  return combine({&a, &b, &c});
}

// 5
CheckOutcome nonrelativistic_mode(const CheckOptions& o) {
  Worst s{"|s02|", 1e-10}, r{"|w1_rho|", 1e-10};
  for (double b : {0.1, 1.0, 100.0}) {
    const auto fp = field(b, o).nonrelativistic();
    s.add(std::abs(moment_sums(fp).s02), "beta=" + fmt(b));
    r.add(std::abs(w1(fp, MomentMethod::direct_sum).w1_rho), "beta=" + fmt(b));
  }
  return combine({&s, &r});
}

// 6
CheckOutcome lambda_oracle(const CheckOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(6);
  const int points = o.quick ? 5 : 20;
  Worst w{"max rel diff", 1e-8};
  long compared = 0;
  for (double b : {0.1, 1.0, 10.0}) {
    const auto fp = field(b, o);
    const double len = fp.magnetic_length();
    std::uniform_real_distribution<double> u(-2.0 * len, 2.0 * len);
    for (int k = 0; k < points; ++k) {
      const Point2 p1{u(rng), u(rng)}, p2{u(rng), u(rng)};
      for (long n = 0; n <= 8; ++n) {
        for (long m : {n - 1, n, n + 1}) {
          if (m < 0 || m > 8) continue;
          const cplx c = lambda_closed(m, n, p1, p2, fp);
          const cplx q = lambda_numeric(m, n, p1, p2, fp);
          const double scale = std::max(std::abs(c), 1e-4 / (len * len));
          w.add(std::abs(c - q) / scale, "beta=" + fmt(b) + " (" + std::to_string(m) + "," + std::to_string(n) + ")");
          ++compared;
        }
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Worst t{"runtime s", 30.0};
  t.add(secs);
  return combine({&w, &t}, std::to_string(compared) + " comparisons");
}

// 7
CheckOutcome d_oracle(const CheckOptions& o) {
  Worst a{"d1 vs k_z quadrature", 1e-8}, b{"d3 lobe vs eps-extrapolated", 1e-6};
  Worst c{"d2 vs eta d1", 1e-12}, e{"d2 vs eta d1 quadrature", 1e-8};
  for (double beta : {0.5, 2.0}) {
    const auto fp = field(beta, o);
    for (long n : {0L, 1L, 4L}) {
      for (double z : {0.3, -1.0, 2.5}) {
        const std::string at = "beta=" + fmt(beta) + " n=" + std::to_string(n) + " z=" + fmt(z);
        const double ref = oracle::d1_fourier(n, z, fp);
        a.add(rel(d1(n, z, fp), ref), at);
        c.add(rel(d2(n, z, fp), fp.eta() * d1(n, z, fp)), at);
        e.add(rel(d2(n, z, fp), fp.eta() * ref), at);
      }
      for (double z : {1.0, -1.7, 3.0})
        b.add(rel(d3_regular(n, z, fp), oracle::d3_eps_extrapolated(n, z, fp)),
              "beta=" + fmt(beta) + " n=" + std::to_string(n) + " z=" + fmt(z));
    }
  }
  return combine({&a, &b, &c, &e});
}

// 8
CheckOutcome delta_sum_rule(const CheckOptions& o) {
  if (o.quick) return skipped_in_quick();
  const auto fp = field(1.0, o);
  const double len = fp.magnetic_length();
  const Point2 rho1{0.3 * len, -0.2 * len};
  const double f1 = std::exp(-(rho1.x * rho1.x + rho1.y * rho1.y) / (8.0 * len * len));
  std::string trail;
  double prev = INFINITY;
  bool decreasing = true;
  double last = 0.0;
  for (long n : {8L, 16L, 32L, 64L}) {
    last = std::abs(oracle::delta_sum_rule_error(n, rho1, fp)) / f1;
    decreasing = decreasing && last < prev;
    prev = last;
    trail += (trail.empty() ? "" : " ") + fmt(last);
  }
  Worst w{"rel error at N=64", 0.01};
  w.add(last);
  CheckOutcome out = combine({&w}, "errors N=8..64: " + trail);
  if (!decreasing) {
    out.pass = false;
    out.detail += " (not strictly decreasing)";
  }
  return out;
}

// 9
CheckOutcome hermite_identity(const CheckOptions&) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  Worst w{"max rel diff", 1e-8};
  for (int k = 0; k < 10; ++k) {
    const double a = u(rng), b = u(rng);
    for (int n = 0; n <= 6; ++n)
      for (int m = 0; m <= n; ++m) {
        const double c = oracle::hermite_overlap_closed(m, n, a, b);
        const double q = oracle::hermite_overlap_numeric(m, n, a, b);
        // Both sides scale like 2^n sqrt(pi) n!, the m = n value at a = b = 0.
        const double scale = std::max(std::abs(c), 1e-6 * std::ldexp(1.0, n) * std::sqrt(pi) * std::tgamma(n + 1.0));
        w.add(std::abs(c - q) / scale, "m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
  }
  return combine({&w});
}

// 10
CheckOutcome high_field_collapse(const CheckOptions& o) {
  const auto fp = field(1e4, o);
  const double len = fp.magnetic_length();
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> radius(0.0, 2.0 * len), angle(0.0, 2.0 * pi), zmag(0.2, 2.0);
  Worst g1{"Gamma1 rel diff", 1e-4}, g3{"Gamma3 rel diff", 1e-4}, t{"max |tilde|", 1e-6};
  for (int k = 0; k < 10; ++k) {
    const double r = radius(rng), phi = angle(rng);
    const double z = (k % 2 ? -1.0 : 1.0) * zmag(rng);
    const Point3 p{r * std::cos(phi), r * std::sin(phi), z};
    const auto g = gamma_values(p, fp);
    const std::string at = "z=" + fmt(z);
    g1.add(rel(g.g1, gamma1_highfield(p, fp)), at);
    g3.add(rel(g.g3_regular, gamma3_highfield(p, fp)), at);
    t.add(std::max({std::abs(g.g1_t), std::abs(g.g2_t), std::abs(g.g3_t_regular)}), at);
  }
  return combine({&g1, &g3, &t});
}

// 11
CheckOutcome planar_equivalence(const CheckOptions& o) {
  Worst w{"max L^2 |series - integral|", 1e-4};
  SeriesPolicy policy = default_planar_policy();
  policy.n_max = 1000000;
  for (double b : {1e-2, 1.0, 1e2}) {
    const auto fp = field(b, o);
    const double len = fp.magnetic_length();
    for (double x : {0.25, 1.0, 4.0}) {
      // rho_bar^2 = x on the diagonal x = y.
      const double c = len * std::sqrt(x);
      const Point2 p{c, c};
      const cplx s = g1_series(p, fp, policy).value;
      const cplx i = g1_integral(p, fp);
      w.add(len * len * std::abs(s - i), "beta=" + fmt(b) + " x=" + fmt(x));
    }
  }
  return combine({&w});
}

// 12
CheckOutcome variance_suite(const CheckOptions& o) {
  RunConfig cfg;
  cfg.a0_shift = o.a0_shift;
  const auto fig3 = cmd_fig3(cfg);
  long below = 0;
  for (std::size_t i = 0; i < fig3.rows.size(); ++i) {
    const double zg = fig3.number(i, "z_g");
    if (fig3.number(i, "z_plus") < zg || fig3.number(i, "z_minus") < zg) ++below;
  }
  Worst grid{"rows with Z below Z_G", 0.0};
  grid.add(double(below));

  const auto v = variance_pm(GaussianSpec{1.0, 2}, field(1e11 / kSchwingerTesla, o));
  Worst lim{"|Z/Z_G - 1| at d=1 B=1e11 T", 0.1};
  lim.add(std::abs(v.z_plus / v.z_g - 1.0), "Z+");
  lim.add(std::abs(v.z_minus / v.z_g - 1.0), "Z-");

  Worst fr{"F_rho closed vs convolution", 1e-8};
  for (double b : {1.0, 100.0})
    for (double d : {0.5, 1.0}) {
      const auto fp = field(b, o);
      for (auto [x, y] : {std::pair{0.1, 0.2}, std::pair{-0.4, 0.3}, std::pair{0.7, -0.5}}) {
        const cplx c = f_rho_closed(x, y, d, fp);
        fr.add(rel(f_rho_numeric(x, y, d, fp), c), "beta=" + fmt(b) + " d=" + fmt(d));
      }
    }

  Worst ps{"||psi_general - psi_highfield|| / ||psi_highfield||", 0.01};
  if (!o.quick) {
    const auto fp = field(100.0, o);
    SeriesPolicy policy;
    policy.n_max = 64;
    const GaussianSpec spec{0.5, 2};
    for (Branch s : {Branch::plus, Branch::minus}) {
      const Point3 p{0.2, 0.1, 0.4};
      const auto gen = psi_pm_general(p, spec, fp, policy, s).value;
      const auto hf = psi_pm_highfield(p, spec, fp, s, false);
      ps.add((gen - hf).norm() / hf.norm(), s == Branch::plus ? "plus" : "minus");
    }
  }
  const std::string extra = "Z+/Z_G=" + fmt(v.z_plus / v.z_g) + " Z-/Z_G=" + fmt(v.z_minus / v.z_g) +
                            (o.quick ? "; general packet skipped in quick mode" : "");
  return o.quick ? combine({&grid, &lim, &fr}, extra) : combine({&grid, &lim, &fr, &ps}, extra);
}

// 13
CheckOutcome figure_trends(const CheckOptions& o) {
  std::vector<std::string> notes;
  bool pass = true;
  auto note = [&](bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "" : "FAILED ") + what);
  };

  // Figure 1: one quadrant of the y = 0 plane is enough by symmetry.
  struct Fig1Case {
    double beta;
    GridAxis x, z;
  };
  const std::vector<Fig1Case> cases = {{1e-2, {0.0, 3.0, o.quick ? 7 : 13}, {0.0, 3.0, o.quick ? 6 : 12}},
                                       {1e4, {0.0, 0.2, 21}, {0.0, 12.0, 24}}};
  for (const auto& c : cases) {
    RunConfig cfg;
    cfg.beta = c.beta;
    cfg.a0_shift = o.a0_shift;
    cfg.grids = {c.x, c.z};
    const auto e = level_extents(cmd_fig1(cfg), c.beta, 0.05);
    if (c.beta < 1.0)
      note(e.ellipticity() < 1.3, "fig1 beta=1e-2 ellipticity " + fmt(e.ellipticity()) + " < 1.3");
    else
      note(e.z_extent / e.x_extent > 3.0, "fig1 beta=1e4 z/x extent " + fmt(e.z_extent / e.x_extent) + " > 3");
  }

  RunConfig cfg2;
  cfg2.a0_shift = o.a0_shift;
  const auto fig2 = cmd_fig2(cfg2);
  const std::size_t last = fig2.rows.size() - 1;
  note(rel(fig2.number(0, "w1"), 3.0) <= 0.01, "fig2 first w1 " + fmt(fig2.number(0, "w1")) + " ~ 3");
  note(rel(fig2.number(last, "w1"), 1.0) <= 0.01, "fig2 last w1 " + fmt(fig2.number(last, "w1")) + " ~ 1");
  double rise = 0.0, rise_at = 0.0;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < fig2.rows.size(); ++i) {
    if (i > 0) {
      const double up = fig2.number(i, "w1") - fig2.number(i - 1, "w1");
      if (up > rise) {
        rise = up;
        rise_at = fig2.number(i, "beta");
      }
    }
    if (fig2.number(i, "w1_rho") > fig2.number(peak, "w1_rho")) peak = i;
  }
  note(rise <= 0.0, "fig2 w1 non-increasing (largest rise " + fmt(rise) + " at beta=" + fmt(rise_at) + ")");
  const double peak_beta = fig2.number(peak, "beta");
  note(peak_beta >= 0.05 && peak_beta <= 20.0, "fig2 w1_rho maximum at beta=" + fmt(peak_beta) + " in [0.05, 20]");

  RunConfig cfg4;
  cfg4.a0_shift = o.a0_shift;
  const auto fig4 = cmd_fig4(cfg4);
  const double w4 = half_max_radius(fig4, 1e-4), w2 = half_max_radius(fig4, 1e-2);
  const double w10 = half_max_radius(fig4, 10.0), whi = half_max_radius(fig4, 1e4);
  const double lhi = FieldParams(1e4).magnetic_length();
  note(std::abs(w4 - w2) <= 0.1 * std::max(w4, w2), "fig4 low-field widths " + fmt(w4) + ", " + fmt(w2) + " within 10%");
  note(w10 > w2, "fig4 width grows near beta=10 (" + fmt(w10) + ")");
  note(whi < 0.1 * w2 && whi / lhi >= 1.0 && whi / lhi <= 5.0, "fig4 beta=1e4 width " + fmt(whi / lhi) + " L");

  CheckOutcome out{pass, false, {}};
  for (const auto& n : notes) out.detail += (out.detail.empty() ? "" : "; ") + n;
  return out;
}

// Supplementary invariants.

CheckOutcome bessel_oracle(const CheckOptions&) {
  Worst w{"K0/K1 vs integral representation", 1e-12};
  for (double x : {0.01, 0.5, 1.9, 2.1, 7.0, 40.0, 700.0}) {
    w.add(rel(bessel_k0(x), oracle::bessel_k0_integral(x)), "K0 x=" + fmt(x));
    w.add(rel(bessel_k1(x), oracle::bessel_k1_integral(x)), "K1 x=" + fmt(x));
  }
  return combine({&w});
}

CheckOutcome transverse_moments(const CheckOptions&) {
  Worst a{"m_rho0 vs quadrature", 1e-8}, b{"m_rho2 vs quadrature", 1e-8};
  for (long n = 0; n <= 8; ++n) {
    a.add(std::abs(m_rho0(n) - oracle::m_rho0_quadrature(n)), "n=" + std::to_string(n));
    b.add(std::abs(m_rho2(n) - oracle::m_rho2_quadrature(n)), "n=" + std::to_string(n));
  }
  return combine({&a, &b});
}

CheckOutcome kernel_structure(const CheckOptions& o) {
  Worst w{"y=0 element identities", 1e-12};
  for (double b : {0.5, 50.0}) {
    const auto fp = field(b, o);
    for (auto p : {Point3{0.3, 0.0, 0.7}, Point3{-0.2, 0.0, -1.1}}) {
      const auto g = gamma_values(p, fp);
      const auto k = assemble_kernel(g, Branch::plus).core;
      const double scale = std::abs(g.g3_t_regular) + std::abs(g.g1_t);
      w.add(std::abs(k(0, 2) + k(2, 0) - 2.0 * g.g3_t_regular) / scale);
      w.add(std::abs(k(2, 0) - k(0, 2) - 2.0 * cplx(0, 1) * g.g1_t) / scale);
    }
  }
  return combine({&w});
}

CheckOutcome moment_additivity(const CheckOptions& o) {
  RunConfig cfg;
  cfg.a0_shift = o.a0_shift;
  cfg.grids = {GridAxis{1e-4, 1e6, 21}};
  const auto fig2 = cmd_fig2(cfg);
  Worst w{"|w1 - w1_rho - w1_z|", 1e-12};
  for (std::size_t i = 0; i < fig2.rows.size(); ++i)
    w.add(std::abs(fig2.number(i, "w1") - fig2.number(i, "w1_rho") - fig2.number(i, "w1_z")));
  return combine({&w});
}

CheckOutcome thread_determinism(const CheckOptions& o) {
  RunConfig cfg;
  cfg.a0_shift = o.a0_shift;
  cfg.grids = {GridAxis{1.0, 1e4, 9}};
  std::ostringstream one, many;
  cfg.threads = 1;
  write_csv(cmd_fig3(cfg), one);
  cfg.threads = 3;
  write_csv(cmd_fig3(cfg), many);
  const bool same = one.str() == many.str();
  return {same, false, same ? "fig3 CSV identical for 1 and 3 threads" : "fig3 CSV differs between thread counts"};
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> checks = {
      {1, "low-field-moment-limit", true, true, low_field_limit},
      {2, "high-field-moment-limit", true, true, high_field_limit},
      {3, "moment-method-agreement", true, true, moment_methods},
      {4, "generating-integral-limits", true, true, generating_limits},
      {5, "nonrelativistic-mode", true, true, nonrelativistic_mode},
      {6, "lambda-oracle-equivalence", true, true, lambda_oracle},
      {7, "d-oracle-equivalence", true, true, d_oracle},
      {8, "delta-sum-rule", true, false, delta_sum_rule},
      {9, "hermite-laguerre-identity", true, true, hermite_identity},
      {10, "high-field-kernel-collapse", true, true, high_field_collapse},
      {11, "planar-series-integral-equivalence", true, true, planar_equivalence},
      {12, "variance-suite", true, true, variance_suite},
      {13, "figure-trends", true, true, figure_trends},
      {14, "bessel-integral-oracle", false, true, bessel_oracle},
      {15, "transverse-moment-oracle", false, true, transverse_moments},
      {16, "kernel-element-structure", false, true, kernel_structure},
      {17, "moment-additivity", false, true, moment_additivity},
      {18, "thread-determinism", false, true, thread_determinism},
  };
  return checks;
}

const Check& find_check(int id) {
  for (const auto& c : check_registry())
    if (c.id == id) return c;
  throw std::out_of_range("no check with id " + std::to_string(id));
}

CheckReport run_check(const Check& check, const CheckOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckOutcome out;
  try {
    out = check.run(opts);
  } catch (const std::exception& e) {
    out = {false, false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {check.id, check.name, std::move(out), secs};
}

void print_report(const CheckReport& r, std::ostream& os) {
  char head[96];
  std::snprintf(head, sizeof head, "%-4s  %02d %-36s (%.2f s)  ", r.outcome.skipped ? "SKIP" : r.outcome.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds);
  os << head << r.outcome.detail << '\n';
}

}  // namespace mok::cli

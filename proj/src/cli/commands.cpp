#include "mok/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mok/kernel2d.hpp"
#include "mok/moments.hpp"
#include "mok/transform.hpp"

namespace mok::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string flag(bool truncated) { return std::string(flag_name(truncated ? RowFlag::truncated : RowFlag::ok)); }
std::string skipped() { return std::string(flag_name(RowFlag::domain_skipped)); }

template <typename Row, typename Fill>
std::vector<Row> compute_rows(std::size_t n, int threads, Fill&& fill) {
  std::vector<Row> rows(n);
  parallel_for(n, threads, [&](std::size_t i) { rows[i] = fill(i); });
  return rows;
}

const GridAxis* axis(const RunConfig& cfg, std::size_t i) {
  if (cfg.grids.size() > i) return &cfg.grids[i];
  if (!cfg.grids.empty()) return &cfg.grids.front();
  return nullptr;
}

}  // namespace

void RunConfig::validate() const {
  if (beta && tesla) throw std::invalid_argument("give either --beta or --tesla, not both");
  if (beta && !(*beta > 0.0)) throw std::invalid_argument("--beta must be positive");
  if (tesla && !(*tesla > 0.0)) throw std::invalid_argument("--tesla must be positive");
  for (double v : d)
    if (!(v > 0.0)) throw std::invalid_argument("--d values must be positive");
  if (tol && !(*tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  if (nmax && *nmax < 1) throw std::invalid_argument("--nmax must be at least 1");
}

std::vector<double> RunConfig::betas(const std::vector<double>& defaults) const {
  if (beta) return {*beta};
  if (tesla) return {*tesla / kSchwingerTesla};
  return defaults;
}

FieldParams RunConfig::field(double b) const {
  FieldParams fp(b);
  return a0_shift != 0.0 ? fp.with_a0_shift(a0_shift) : fp;
}

SeriesPolicy RunConfig::policy(SeriesPolicy base) const {
  if (tol) base.term_tol = *tol;
  if (nmax) base.n_max = *nmax;
  return base;
}

std::vector<double> fig1_default_betas() { return {1e-2, 1.0, 1e2, 1e4}; }
std::vector<double> fig4_default_betas() { return {1e-4, 1e-2, 10.0, 1e4}; }

Dataset cmd_fig1(const RunConfig& cfg) {
  cfg.validate();
  struct Task {
    double beta, x, z;
  };
  std::vector<Task> tasks;
  for (double b : cfg.betas(fig1_default_betas())) {
    const double len = FieldParams(b).magnetic_length();
    const GridAxis gx = axis(cfg, 0) ? *axis(cfg, 0) : GridAxis{-3.0 * std::min(1.0, 4.0 * len), 3.0 * std::min(1.0, 4.0 * len), 41};
    const double zmax = 3.0 + std::log1p(b);
    const GridAxis gz = axis(cfg, 1) ? *axis(cfg, 1) : GridAxis{-zmax, zmax, 40};
    for (double x : gx.nodes())
      for (double z : gz.centres()) tasks.push_back({b, x, z});
  }
  const auto policy = cfg.policy();
  auto rows = compute_rows<std::vector<Cell>>(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    if (t.z == 0.0) return std::vector<Cell>{t.beta, t.x, t.z, kNaN, kNaN, 0L, skipped()};
    const auto g = gamma_values({t.x, 0.0, t.z}, cfg.field(t.beta), policy);
    return std::vector<Cell>{t.beta, t.x, t.z, g.g1.real(), g.g1.imag(), g.terms_used, flag(g.truncated)};
  });
  return {{"beta", "x", "z", "gamma1_re", "gamma1_im", "terms_used", "flags"}, std::move(rows)};
}

Dataset cmd_fig2(const RunConfig& cfg) {
  cfg.validate();
  const GridAxis sweep = axis(cfg, 0) ? *axis(cfg, 0) : GridAxis{1e-4, 1e6, 61};
  const auto betas = cfg.betas(sweep.log_nodes());
  const auto method = cfg.direct_moments ? MomentMethod::direct_sum : MomentMethod::integral;
  const auto policy = cfg.policy(default_moment_policy());
  auto rows = compute_rows<std::vector<Cell>>(betas.size(), cfg.threads, [&](std::size_t i) {
    const auto r = w1(cfg.field(betas[i]), method, policy);
    return std::vector<Cell>{betas[i], r.w1, r.w1_rho, r.w1_z, r.w1_t,
                             std::string(method == MomentMethod::integral ? "integral" : "direct_sum"),
                             flag(r.truncated)};
  });
  return {{"beta", "w1", "w1_rho", "w1_z", "w1_tilde", "method", "flags"}, std::move(rows)};
}

Dataset cmd_fig3(const RunConfig& cfg) {
  cfg.validate();
  const GridAxis sweep = axis(cfg, 0) ? *axis(cfg, 0) : GridAxis{1.0, 1e4, 41};
  const auto betas = cfg.betas(sweep.log_nodes());
  const auto widths = cfg.d.empty() ? std::vector<double>{0.25, 0.5, 1.0} : cfg.d;
  struct Task {
    double beta, d;
  };
  std::vector<Task> tasks;
  for (double d : widths)
    for (double b : betas) tasks.push_back({b, d});
  auto rows = compute_rows<std::vector<Cell>>(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto v = variance_pm(GaussianSpec{tasks[i].d, 2}, cfg.field(tasks[i].beta));
    return std::vector<Cell>{tasks[i].beta, tasks[i].d, v.z_plus, v.z_minus, v.z_g, flag(false)};
  });
  return {{"beta", "d", "z_plus", "z_minus", "z_g", "flags"}, std::move(rows)};
}

Dataset cmd_fig4(const RunConfig& cfg) {
  cfg.validate();
  struct Task {
    double beta, rho;
  };
  std::vector<Task> tasks;
  for (double b : cfg.betas(fig4_default_betas())) {
    const double len = FieldParams(b).magnetic_length();
    const GridAxis g = axis(cfg, 0) ? *axis(cfg, 0) : GridAxis{0.0, 4.0 * std::min(1.0, 4.0 * len), 201};
    for (double rho : g.nodes()) tasks.push_back({b, rho});
  }
  const QuadConfig qc{cfg.tol.value_or(1e-11), 1e-15};
  auto rows = compute_rows<std::vector<Cell>>(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    if (t.rho == 0.0) return std::vector<Cell>{t.beta, t.rho, kNaN, skipped()};
    return std::vector<Cell>{t.beta, t.rho, std::abs(g1_integral({t.rho, 0.0}, cfg.field(t.beta), qc)), flag(false)};
  });
  return {{"beta", "rho", "g1_abs", "flags"}, std::move(rows)};
}

Dataset cmd_eval(const RunConfig& cfg) {
  cfg.validate();
  Dataset out{{"beta", "x", "y", "z", "quantity", "re", "im", "terms_used", "flags"}, {}};
  const Point3 p = cfg.point;
  for (double b : cfg.betas({1.0})) {
    const FieldParams fp = cfg.field(b);
    auto emit = [&](const std::string& name, cplx v, long terms, const std::string& fl) {
      out.rows.push_back({b, p.x, p.y, p.z, name, v.real(), v.imag(), terms, fl});
    };
    if (p.z != 0.0) {
      const auto g = gamma_values(p, fp, cfg.policy());
      const std::string fl = flag(g.truncated);
      emit("gamma1", g.g1, g.terms_used, fl);
      emit("gamma2", g.g2, g.terms_used, fl);
      emit("gamma3_regular", g.g3_regular, g.terms_used, fl);
      emit("gamma1_tilde", g.g1_t, g.terms_used, fl);
      emit("gamma2_tilde", g.g2_t, g.terms_used, fl);
      emit("gamma3_tilde_regular", g.g3_t_regular, g.terms_used, fl);
      emit("gamma3_delta_coeff", g.g3_delta_coeff, g.terms_used, fl);
      for (Branch s : {Branch::plus, Branch::minus}) {
        const auto k = assemble_kernel(g, s);
        const std::string prefix = s == Branch::plus ? "kplus_" : "kminus_";
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c)
            emit(prefix + std::to_string(r + 1) + std::to_string(c + 1), k.regular(r, c), g.terms_used, fl);
      }
    } else if (p.x != 0.0 || p.y != 0.0) {
      const QuadConfig qc{cfg.tol.value_or(1e-11), 1e-15};
      const Point2 q = p.planar();
      emit("g1", g1_integral(q, fp, qc), 0, flag(false));
      emit("g2", g2_integral(q, fp, qc), 0, flag(false));
      emit("g1_tilde", g1_tilde_integral(q, fp, qc), 0, flag(false));
      emit("g2_tilde", g2_tilde_integral(q, fp, qc), 0, flag(false));
    } else {
      emit("gamma1", kNaN, 0, skipped());
    }
  }
  return out;
}

double LevelExtents::ellipticity() const {
  const double lo = std::min(x_extent, z_extent), hi = std::max(x_extent, z_extent);
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

namespace {

// Outward scan from the first sample: position where f drops below `level`.
double crossing(const std::vector<std::pair<double, double>>& samples, double level) {
  if (samples.empty() || samples.front().second < level) return 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto [s0, f0] = samples[i - 1];
    const auto [s1, f1] = samples[i];
    if (f1 < level) return s0 + (s1 - s0) * (f0 - level) / (f0 - f1);
  }
  return samples.back().first;
}

}  // namespace

LevelExtents level_extents(const Dataset& fig1, double beta, double level) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fig1.rows.size(); ++i)
    if (fig1.number(i, "beta") == beta && std::isfinite(fig1.number(i, "gamma1_re"))) rows.push_back(i);
  if (rows.empty()) throw std::invalid_argument("fig1 data has no rows for this beta");
  double z_row = std::numeric_limits<double>::infinity(), x_col = z_row;
  for (auto i : rows) {
    const double z = fig1.number(i, "z"), x = fig1.number(i, "x");
    if (z > 0.0 && z < z_row) z_row = z;
    if (x >= 0.0 && x < x_col) x_col = x;
  }
  std::vector<std::pair<double, double>> along_x, along_z;
  for (auto i : rows) {
    const double z = fig1.number(i, "z"), x = fig1.number(i, "x"), v = fig1.number(i, "gamma1_re");
    if (z == z_row && x >= 0.0) along_x.emplace_back(x, v);
    if (x == x_col && z > 0.0) along_z.emplace_back(z, v);
  }
  std::sort(along_x.begin(), along_x.end());
  std::sort(along_z.begin(), along_z.end());
  return {crossing(along_x, level), crossing(along_z, level)};
}

double half_max_radius(const Dataset& fig4, double beta) {
  std::vector<std::pair<double, double>> prof;
  for (std::size_t i = 0; i < fig4.rows.size(); ++i) {
    if (fig4.number(i, "beta") != beta) continue;
    const double rho = fig4.number(i, "rho"), g = fig4.number(i, "g1_abs");
    if (std::isfinite(g)) prof.emplace_back(rho, rho * g);
  }
  if (prof.empty()) throw std::invalid_argument("fig4 data has no rows for this beta");
  std::sort(prof.begin(), prof.end());
  const auto peak = std::max_element(prof.begin(), prof.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  const std::vector<std::pair<double, double>> tail(peak, prof.end());
  return crossing(tail, 0.5 * peak->second);
}

}  // namespace mok::cli

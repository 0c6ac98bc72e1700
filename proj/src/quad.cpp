#include "mok/quad.hpp"

#include <numbers>
#include <utility>

namespace mok {

void WynnEpsilon::push(double s) {
  // row_[k] holds eps_k of the previous anti-diagonal; even columns are estimates.
  ++count_;
  const double prev_estimate = estimate_;
  std::vector<double> fresh{s};
  fresh.reserve(row_.size() + 1);
  for (std::size_t k = 0; k < row_.size(); ++k) {
    const double older = (k == 0) ? 0.0 : row_[k - 1];
    const double diff = fresh[k] - row_[k];
    if (std::abs(diff) <= 1e-300 + 1e-15 * std::abs(fresh[k])) break;
    fresh.push_back(older + 1.0 / diff);
  }
  row_ = std::move(fresh);
  estimate_ = row_[((row_.size() - 1) / 2) * 2];
  change_ = (count_ > 1) ? std::abs(estimate_ - prev_estimate) : std::numeric_limits<double>::infinity();
}

Estimate<double> oscillatory_abel(const std::function<double(double)>& g, double zeta, const QuadConfig& cfg) {
  if (!(zeta != 0.0) || !std::isfinite(zeta)) throw std::domain_error("oscillatory_abel: zeta must be nonzero");
  const double az = std::abs(zeta);
  const double sign = zeta > 0 ? 1.0 : -1.0;
  const double period = std::numbers::pi / az;

  // The g -> 1 part has Abel value 1/|zeta|; the remainder's lobes alternate and decay.
  auto lobe_integrand = [&](double k) { return (g(k) - 1.0) * std::sin(az * k); };

  Estimate<double> out;
  QuadConfig lobe_cfg = cfg;
  lobe_cfg.rel_tol = std::min(cfg.rel_tol, 1e-12);
  WynnEpsilon wynn;
  double partial = 0.0;
  double last_lobe = 0.0;
  int stable = 0;
  constexpr int max_lobes = 400;
  for (int m = 0; m < max_lobes; ++m) {
    auto lobe = integrate_finite(lobe_integrand, m * period, (m + 1) * period, lobe_cfg);
    out.evaluations += lobe.evaluations;
    partial += lobe.value;
    last_lobe = lobe.value;
    wynn.push(partial);
    const double tol = std::max(cfg.abs_tol, 1e-13) + cfg.rel_tol * std::abs(wynn.estimate());
    if (std::abs(last_lobe) < 1e-300) {
      out.value = sign * (1.0 / az + partial);
      out.error = 0.0;
      return out;
    }
    if (m >= 6 && wynn.change() < tol) {
      if (++stable >= 2) {
        out.value = sign * (1.0 / az + wynn.estimate());
        out.error = wynn.change();
        return out;
      }
    } else {
      stable = 0;
    }
  }
  out.value = sign * (1.0 / az + wynn.estimate());
  out.error = wynn.change();
  out.status = out.error < 1e-6 ? Status::ok : Status::nonconvergent;
  return out;
}

}  // namespace mok

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace mok {

enum class Status { ok, nonconvergent };

/// Result of a numerical integral: value, error estimate and a convergence flag.
template <typename T>
struct Estimate {
  T value{};
  double error = 0.0;
  Status status = Status::ok;
  long evaluations = 0;

  bool ok() const { return status == Status::ok; }
};

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 50;
  // Upper bound on the number of subintervals kept by the adaptive driver.
  int max_intervals = 4000;
};

/// Raised on request when an integral cannot reach its tolerance.
class NonConvergent : public std::runtime_error {
 public:
  NonConvergent(const std::string& what, double best, double estimate)
      : std::runtime_error(what), best_(best), estimate_(estimate) {}
  double best() const { return best_; }
  double estimate() const { return estimate_; }

 private:
  double best_;
  double estimate_;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

template <typename T>
T zero_like(const T& proto) {
  if constexpr (std::is_arithmetic_v<T>) {
    return T(0);
  } else if constexpr (std::is_same_v<T, std::complex<double>>) {
    return T(0.0, 0.0);
  } else {
    return T::Zero(proto.rows(), proto.cols());
  }
}

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
  double a, b;
  T value;
  double error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
auto gauss_kronrod(F& f, double a, double b) {
  using T = std::decay_t<decltype(f(a))>;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    const T s = f1 + f2;
    kron = kron + s * kWgk[j];
    if (j % 2 == 1) gauss = gauss + s * kWg[j / 2];
  }
  kron = kron * h;
  gauss = gauss * h;
  double err = magnitude(T(kron - gauss));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * magnitude(kron));
  return std::pair<T, double>{kron, err};
}

}  // namespace detail

/// Globally adaptive G7K15 on [a,b], split at the given interior breakpoints.
/// The value type may be double, std::complex<double> or a fixed-size Eigen array.
template <typename F, typename T = std::decay_t<std::invoke_result_t<F&, double>>>
Estimate<T> integrate_finite(F&& f, double a, double b, const QuadConfig& cfg = {},
                             const std::vector<double>& breakpoints = {}) {
  using detail::Panel;
  Estimate<T> out;
  if (!(a < b)) {
    const double mid = 0.5 * (a + b);
    out.value = zero_like(f(mid));
    out.evaluations = 1;
    if (a > b) {
      Estimate<T> r = integrate_finite(f, b, a, cfg, breakpoints);
      r.value = T(r.value * -1.0);
      return r;
    }
    return out;
  }

  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  std::priority_queue<Panel<T>> heap;
  T total{};
  double total_err = 0.0;
  bool first = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) continue;
    auto [v, e] = detail::gauss_kronrod(f, cuts[i], cuts[i + 1]);
    out.evaluations += 15;
    total = first ? v : T(total + v);
    first = false;
    total_err += e;
    heap.push({cuts[i], cuts[i + 1], v, e, 0});
  }

  std::vector<Panel<T>> frozen;
  while (!heap.empty()) {
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * magnitude(total));
    if (total_err <= target) break;
    if (static_cast<int>(heap.size() + frozen.size()) >= cfg.max_intervals) break;
    Panel<T> p = heap.top();
    heap.pop();
    if (p.depth >= cfg.max_depth) {
      frozen.push_back(p);
      continue;
    }
    const double m = 0.5 * (p.a + p.b);
    auto [v1, e1] = detail::gauss_kronrod(f, p.a, m);
    auto [v2, e2] = detail::gauss_kronrod(f, m, p.b);
    out.evaluations += 30;
    total = total + (v1 + v2 - p.value);
    total_err += e1 + e2 - p.error;
    heap.push({p.a, m, v1, e1, p.depth + 1});
    heap.push({m, p.b, v2, e2, p.depth + 1});
  }

  // Re-add in a fixed order so the result does not depend on the update history.
  std::vector<Panel<T>> all = frozen;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel<T>& l, const Panel<T>& r) { return l.a < r.a; });
  T sum = all.front().value;
  double err = all.front().error;
  for (std::size_t i = 1; i < all.size(); ++i) {
    sum = sum + all[i].value;
    err += all[i].error;
  }
  out.value = sum;
  out.error = err;
  const double target = std::max(cfg.abs_tol, cfg.rel_tol * magnitude(sum));
  out.status = (err <= target) ? Status::ok : Status::nonconvergent;
  return out;
}

/// Integral over [0, inf) of an integrand decaying on the length `decay_scale`.
/// [0, c] is integrated directly and the tail through q = c + s/(1-s).
template <typename F>
auto integrate_halfline(F&& f, double decay_scale, const QuadConfig& cfg = {},
                        const std::vector<double>& breakpoints = {}) {
  using T = std::decay_t<decltype(f(0.0))>;
  if (!(decay_scale > 0.0)) throw std::domain_error("integrate_halfline: decay scale must be positive");
  const double c = 8.0 * decay_scale;
  auto head = integrate_finite(f, 0.0, c, cfg, breakpoints);
  const T proto = head.value;
  auto tail_integrand = [&](double s) -> T {
    const double w = 1.0 - s;
    const double q = c + decay_scale * s / w;
    const T v = f(q);
    if (magnitude(v) == 0.0) return zero_like(proto);
    return v * (decay_scale / (w * w));
  };
  QuadConfig tail_cfg = cfg;
  tail_cfg.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * magnitude(head.value)) * 0.5;
  auto tail = integrate_finite(tail_integrand, 0.0, 1.0, tail_cfg);
  Estimate<T> out;
  out.value = head.value + tail.value;
  out.error = head.error + tail.error;
  out.evaluations = head.evaluations + tail.evaluations;
  out.status = (head.ok() && tail.ok()) ? Status::ok : Status::nonconvergent;
  return out;
}

/// Wynn's epsilon algorithm applied to a growing sequence of partial sums.
class WynnEpsilon {
 public:
  void push(double s);
  double estimate() const { return estimate_; }
  double change() const { return change_; }
  std::size_t size() const { return count_; }

 private:
  std::vector<double> row_;
  std::size_t count_ = 0;
  double estimate_ = 0.0;
  double change_ = std::numeric_limits<double>::infinity();
};

/// Abel limit of \int_0^inf g(k) sin(k zeta) e^{-eps k} dk as eps -> 0+,
/// for g smooth with g(k) -> 1. Odd in zeta; zeta = 0 is a domain error.
Estimate<double> oscillatory_abel(const std::function<double(double)>& g, double zeta,
                                  const QuadConfig& cfg = {});

enum class Smoothing { none, windowed_mean };

struct SeriesPolicy {
  double term_tol = 1e-6;
  long n_max = 1000000;
  int consecutive_below = 3;
  Smoothing smoothing = Smoothing::none;

  void validate() const {
    if (!(term_tol > 0.0) || n_max < 1 || consecutive_below < 1)
      throw std::invalid_argument("SeriesPolicy: invalid parameters");
  }
};

template <typename T>
struct SeriesResult {
  T value{};
  T partial{};
  long terms_used = 0;
  bool truncated = false;
};

struct TermMagnitude {
  template <typename T>
  double operator()(const T& t) const {
    return magnitude(t);
  }
};

/// Sums term(0), term(1), ... in order. Stops after `consecutive_below`
/// successive terms whose `measure` is below term_tol (once n >= n_min), or
/// flags truncation at n_max.
///
/// With windowed_mean smoothing and a truncated run, the reported value is the
/// Hann-weighted mean of partial sums over the last three quarters of the run,
/// which damps the slow oscillation of conditionally convergent series.
template <typename F, typename M = TermMagnitude>
auto sum_series(F&& term, const SeriesPolicy& policy, long n_min = 0, M measure = {}) {
  using T = std::decay_t<decltype(term(0L))>;
  policy.validate();
  SeriesResult<T> out;
  T sum{};
  bool first = true;
  int below = 0;
  const bool smooth = policy.smoothing == Smoothing::windowed_mean;
  const long window_start = policy.n_max / 4;
  T window_sum{};
  double window_weight = 0.0;
  bool window_started = false;
  const double window_len = double(policy.n_max - window_start);

  long n = 0;
  for (; n < policy.n_max; ++n) {
    const T t = term(n);
    sum = first ? t : T(sum + t);
    first = false;
    if (smooth && n >= window_start) {
      const double u = (double(n - window_start) + 0.5) / window_len;
      const double w = 1.0 - std::cos(2.0 * 3.14159265358979323846 * u);
      window_sum = window_started ? T(window_sum + sum * w) : T(sum * w);
      window_started = true;
      window_weight += w;
    }
    if (measure(t) < policy.term_tol) {
      if (++below >= policy.consecutive_below && n + 1 >= n_min) {
        ++n;
        out.value = sum;
        out.partial = sum;
        out.terms_used = n;
        return out;
      }
    } else {
      below = 0;
    }
  }
  out.partial = sum;
  out.terms_used = n;
  out.truncated = true;
  out.value = (smooth && window_weight > 0.0) ? T(window_sum * (1.0 / window_weight)) : sum;
  return out;
}

}  // namespace mok

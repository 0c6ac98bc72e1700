#pragma once

#include <atomic>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

namespace mok::cli {

enum class RowFlag { ok, truncated, domain_skipped };
std::string_view flag_name(RowFlag f);

using Cell = std::variant<double, long, std::string>;

/// A table with a fixed column order. Every figure dataset ends in a `flags` column.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  std::string text(std::size_t row, std::string_view name) const;
};

/// 17 significant digits ("%.17g"), so every value round-trips.
std::string format_double(double v);

void write_csv(const Dataset& data, std::ostream& os);
/// {"columns": [...], "rows": [[...], ...]}; non-finite numbers become null.
void write_json(const Dataset& data, std::ostream& os);

/// One axis of a sweep, parsed from "min:max:steps".
struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  long steps = 2;

  /// `steps` equally spaced nodes including both ends.
  std::vector<double> nodes() const;
  /// `steps` cell centres, i.e. nodes shifted by half a step.
  std::vector<double> centres() const;
  /// `steps` logarithmically spaced nodes (min and max must be positive).
  std::vector<double> log_nodes() const;
};

GridAxis parse_grid(std::string_view text);
std::vector<double> parse_list(std::string_view text);

/// Explicit request wins, then MOK_THREADS, then 1.
int resolve_threads(int requested);

/// Calls body(i) for i in [0, n) on `threads` workers. Bodies write into
/// preallocated slots, so results do not depend on the thread count.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(std::size_t(threads), n);
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace mok::cli

#include "mok/cli/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace mok::cli {

std::string_view flag_name(RowFlag f) {
  switch (f) {
    case RowFlag::ok: return "ok";
    case RowFlag::truncated: return "truncated";
    case RowFlag::domain_skipped: return "domain-skipped";
  }
  return "ok";
}

std::size_t Dataset::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("dataset has no column " + std::string(name));
  return std::size_t(it - columns.begin());
}

double Dataset::number(std::size_t row, std::string_view name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* l = std::get_if<long>(&c)) return double(*l);
  throw std::invalid_argument("column " + std::string(name) + " is not numeric");
}

std::string Dataset::text(std::size_t row, std::string_view name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  throw std::invalid_argument("column " + std::string(name) + " is not text");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, long>) return std::to_string(v);
        else return v;
      },
      c);
}

}  // namespace

void write_csv(const Dataset& data, std::ostream& os) {
  for (std::size_t j = 0; j < data.columns.size(); ++j) os << (j ? "," : "") << data.columns[j];
  os << '\n';
  for (const auto& row : data.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << cell_text(row[j]);
    os << '\n';
  }
}

void write_json(const Dataset& data, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["columns"] = data.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : data.rows) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) out.push_back(v);
              else out.push_back(nullptr);
            } else {
              out.push_back(v);
            }
          },
          c);
    }
    rows.push_back(std::move(out));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(1) << '\n';
}

std::vector<double> GridAxis::nodes() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) out[std::size_t(i)] = min + (max - min) * double(i) / double(steps - 1);
  return out;
}

std::vector<double> GridAxis::centres() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) out[std::size_t(i)] = min + (max - min) * (double(i) + 0.5) / double(steps);
  return out;
}

std::vector<double> GridAxis::log_nodes() const {
  if (!(min > 0.0) || !(max > 0.0)) throw std::invalid_argument("log grid needs positive bounds");
  GridAxis exps{std::log10(min), std::log10(max), steps};
  auto out = exps.nodes();
  for (auto& v : out) v = std::pow(10.0, v);
  out.front() = min;
  out.back() = max;
  return out;
}

namespace {

double parse_number(std::string_view s) {
  const std::string owned(s);
  char* end = nullptr;
  const double v = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(v))
    throw std::invalid_argument("not a number: '" + owned + "'");
  return v;
}

}  // namespace

GridAxis parse_grid(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw std::invalid_argument("grid must look like min:max:steps");
  GridAxis g;
  g.min = parse_number(text.substr(0, c1));
  g.max = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  const auto steps_text = text.substr(c2 + 1);
  long steps = 0;
  const auto [ptr, ec] = std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), steps);
  if (ec != std::errc() || ptr != steps_text.data() + steps_text.size())
    throw std::invalid_argument("grid steps must be an integer");
  if (steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
  if (g.max < g.min) throw std::invalid_argument("grid max is below min");
  g.steps = steps;
  return g;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_number(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MOK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace mok::cli

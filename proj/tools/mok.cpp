#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mok/cli/checks.hpp"
#include "mok/cli/commands.hpp"

using namespace mok::cli;

namespace {

struct Options {
  std::optional<double> beta, tesla, tol;
  std::optional<long> nmax;
  std::vector<std::string> grids;
  std::string d, point, format = "csv", out;
  int threads = 0;
  bool quick = false, direct = false;
  double perturb_a0 = 0.0;
  std::vector<int> only;
};

void add_common(CLI::App* cmd, Options& o) {
  auto* b = cmd->add_option("--beta", o.beta, "field as B/B0 (B0 = 4.4e9 T)");
  auto* t = cmd->add_option("--tesla", o.tesla, "field in tesla");
  b->excludes(t);
  cmd->add_option("--grid", o.grids, "min:max:steps, once per sweep axis")->take_all();
  cmd->add_option("--tol", o.tol, "series term tolerance or quadrature tolerance");
  cmd->add_option("--nmax", o.nmax, "maximum number of Landau levels");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--threads", o.threads, "worker threads (default MOK_THREADS or 1)");
  cmd->add_flag("--quick", o.quick, "reduced workload");
  cmd->add_option("--perturb-a0", o.perturb_a0)->group("");
}

RunConfig to_config(const Options& o) {
  RunConfig c;
  c.beta = o.beta;
  c.tesla = o.tesla;
  c.tol = o.tol;
  c.nmax = o.nmax;
  for (const auto& g : o.grids) c.grids.push_back(parse_grid(g));
  if (!o.d.empty()) c.d = parse_list(o.d);
  if (!o.point.empty()) {
    const auto v = parse_list(o.point);
    if (v.size() != 3) throw std::invalid_argument("--point needs x,y,z");
    c.point = {v[0], v[1], v[2]};
  }
  c.direct_moments = o.direct;
  c.threads = resolve_threads(o.threads);
  c.quick = o.quick;
  c.a0_shift = o.perturb_a0;
  c.format = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
  c.out = o.out;
  c.validate();
  return c;
}

int emit(const Dataset& data, const RunConfig& c) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open " << c.out << '\n';
      return 2;
    }
  }
  std::ostream& os = c.out.empty() ? std::cout : file;
  if (c.format == OutputFormat::json) write_json(data, os);
  else write_csv(data, os);
  return os ? 0 : 2;
}

int validate(const Options& o) {
  CheckOptions opts{o.quick, o.perturb_a0};
  int failures = 0;
  for (const auto& check : check_registry()) {
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), check.id) == o.only.end()) continue;
    CheckReport r;
    if (o.quick && !check.quick) r = {check.id, check.name, {true, true, "skipped in quick mode"}, 0.0};
    else r = run_check(check, opts);
    print_report(r, std::cout);
    std::cout.flush();
    if (!r.outcome.pass) ++failures;
  }
  std::cout << (failures ? std::to_string(failures) + " check(s) failed\n" : "all checks passed\n");
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-separating transformation kernels for Dirac electrons in a magnetic field"};
  app.require_subcommand(1);
  Options o;
  struct Sub {
    const char* name;
    const char* help;
    Dataset (*run)(const RunConfig&);
  };
  const Sub subs[] = {
      {"fig1", "Gamma1 on the y=0 plane", cmd_fig1},
      {"fig2", "second moments of Gamma1 versus field", cmd_fig2},
      {"fig3", "variances of transformed Gaussian packets", cmd_fig3},
      {"fig4", "|G1| of the planar kernel along a ray", cmd_fig4},
      {"eval", "kernel functions and matrices at one point", cmd_eval},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> commands;
  for (const auto& s : subs) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, o);
    if (std::string(s.name) == "fig3") cmd->add_option("--d", o.d, "packet widths, comma separated");
    if (std::string(s.name) == "fig2") cmd->add_flag("--direct", o.direct, "use direct Landau sums");
    if (std::string(s.name) == "eval") cmd->add_option("--point", o.point, "x,y,z in units of the Compton wavelength");
    commands.emplace_back(cmd, &s);
  }
  auto* val = app.add_subcommand("validate", "run the oracle and invariant suite");
  val->add_flag("--quick", o.quick, "fast subset");
  val->add_option("--criterion", o.only, "restrict to these check ids");
  val->add_option("--perturb-a0", o.perturb_a0)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (val->parsed()) return validate(o);
    for (const auto& [cmd, sub] : commands)
      if (cmd->parsed()) {
        const RunConfig c = to_config(o);
        return emit(sub->run(c), c);
      }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace mok::cli {

struct CheckOptions {
  bool quick = false;
  /// Mutation hook: shift of a_0 applied to every field the checks build.
  double a0_shift = 0.0;
};

struct CheckOutcome {
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

struct Check {
  int id;
  std::string name;
  /// Acceptance criteria are 1..13; higher ids are supplementary invariants.
  bool acceptance;
  /// False when the check is too slow for the --quick subset.
  bool quick;
  std::function<CheckOutcome(const CheckOptions&)> run;
};

const std::vector<Check>& check_registry();
const Check& find_check(int id);

struct CheckReport {
  int id;
  std::string name;
  CheckOutcome outcome;
  double seconds;
};

/// Runs one check, catching exceptions as failures.
CheckReport run_check(const Check& check, const CheckOptions& opts);
/// One line: "PASS  07 d-oracle-equivalence  (1.23 s)  detail".
void print_report(const CheckReport& r, std::ostream& os);

}  // namespace mok::cli

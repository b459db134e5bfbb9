#pragma once

// End-to-end acceptance checks. Each criterion produces one result line; the
// verify subcommand and the acceptance test binary both run through here.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lagcov/exact.hpp"

namespace lagcov {

enum class AcceptanceScale {
  kFull,     // stated sizes
  kReduced,  // fewer replicates / matrices, same tolerances
  kQuick,    // exact and analytic criteria only, simulations skipped
};

struct AcceptanceOptions {
  AcceptanceScale scale = AcceptanceScale::kFull;
  unsigned threads = 1;
  std::uint64_t seed = 42;
  // Closed form for f_m(k) checked against enumeration; replaceable so a
  // broken formula can be fed in as a negative control.
  std::function<Integer(int, int)> f_closed_form;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

// Individual criteria, numbered as in the report.
CriterionResult check_exact_route_agreement();
CriterionResult check_enumeration_oracle(const std::function<Integer(int, int)>& f_closed);
CriterionResult check_generating_function_identity();
CriterionResult check_polynomial_identity();
CriterionResult check_law_moment_consistency();
CriterionResult check_moment_bound();
CriterionResult check_eigensolver_oracle(AcceptanceScale scale, std::uint64_t seed);

bool all_passed(const std::vector<CriterionResult>& results);

// One line per criterion: `[PASS] 3 name (0.01 s) detail`.
void print_report(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace lagcov

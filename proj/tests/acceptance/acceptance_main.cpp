// Full-scale acceptance run: one PASS/FAIL line per criterion.

#include <cstdlib>
#include <iostream>

#include "lagcov/acceptance.hpp"

int main() {
  lagcov::AcceptanceOptions options;
  options.scale = lagcov::AcceptanceScale::kFull;
  options.threads = 1;
  if (const char* t = std::getenv("LAGCOV_THREADS")) options.threads = static_cast<unsigned>(std::atoi(t));
  const auto results = lagcov::run_acceptance(options);
  lagcov::print_report(std::cout, results);
  const bool ok = lagcov::all_passed(results);
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lagcov {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAcceptanceFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRouteDisagreement = 3;
inline constexpr int kExitNumericalLaw = 4;
inline constexpr int kExitEigensolver = 5;

// Subcommands: moments, density, simulate, verify, tables. `args` excludes
// the program name. LAGCOV_SEED / LAGCOV_THREADS supply defaults for
// --seed / --threads.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lagcov

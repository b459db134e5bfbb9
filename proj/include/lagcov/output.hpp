#pragma once

// CSV and JSON serialization shared by the CLI subcommands. Every output
// starts with the resolved run configuration: `# key=value` comment lines in
// CSV, a "config" object in JSON.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lagcov/matrix_lab.hpp"

namespace lagcov {

using Json = nlohmann::ordered_json;

// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

// One `# key=value` line per config entry, in insertion order.
void write_config_comments(std::ostream& out, const Json& config);

Json ensemble_config_json(const EnsembleConfig& config);

// {config, y_T, moments_empirical, moments_theoretical, lambda_max_mean,
//  lambda_max_se, b_theoretical, ks_distance, warnings, checks, replicates}
Json summary_to_json(const EmpiricalSummary& summary);

// Config comments plus the summary scalars as comments, then
// `k,moment_empirical,moment_theoretical,rel_error`.
void write_summary_csv(std::ostream& out, const EmpiricalSummary& summary);

// `replicate,index,eigenvalue`, eigenvalues descending within a replicate.
void write_eigenvalues_csv(std::ostream& out, const EmpiricalSummary& summary);

}  // namespace lagcov

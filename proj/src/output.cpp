#include "lagcov/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace lagcov {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_config_comments(std::ostream& out, const Json& config) {
  for (const auto& [key, value] : config.items()) {
    out << "# " << key << '=';
    if (value.is_string()) {
      out << value.get<std::string>();
    } else if (value.is_number_float()) {
      out << format_number(value.get<double>());
    } else {
      out << value.dump();
    }
    out << '\n';
  }
}

Json ensemble_config_json(const EnsembleConfig& config) {
  Json j;
  j["p"] = config.p;
  j["T"] = config.T;
  j["s"] = config.lag;
  j["dist"] = to_string(config.distribution);
  j["reps"] = config.replicates;
  j["seed"] = config.seed;
  j["K"] = config.max_moment_order;
  return j;
}

namespace {

double rel_error(double got, double want) { return want == 0.0 ? std::abs(got) : std::abs(got - want) / want; }

}  // namespace

Json summary_to_json(const EmpiricalSummary& summary) {
  Json j;
  j["config"] = ensemble_config_json(summary.config);
  j["y_T"] = summary.y_T;
  j["moments_empirical"] = summary.moments_empirical;
  j["moments_theoretical"] = summary.moments_theoretical;
  j["lambda_max_mean"] = summary.lambda_max_mean;
  j["lambda_max_se"] = summary.lambda_max_se;
  j["b_theoretical"] = summary.b_theoretical;
  j["ks_distance"] = summary.ks_distance;
  j["warnings"] = summary.warnings;

  Json checks;
  checks["moment_orders_checked"] = summary.thresholds.checked_moment_orders;
  checks["moment_rel_error_max"] = summary.moment_rel_error_max;
  checks["moment_rel_tol"] = summary.thresholds.moment_rel_tol;
  checks["moments_pass"] = summary.moments_pass;
  checks["ks_tol"] = summary.thresholds.ks_tol;
  checks["ks_pass"] = summary.ks_pass;
  checks["lambda_max_rel_tol"] = summary.thresholds.lambda_max_rel_tol;
  checks["lambda_max_pass"] = summary.lambda_max_pass;
  j["checks"] = checks;

  Json reps = Json::array();
  for (std::size_t r = 0; r < summary.replicates.size(); ++r) {
    const auto& rep = summary.replicates[r];
    Json item;
    item["replicate"] = r;
    item["seed"] = rep.seed;
    item["lambda_max"] = rep.lambda_max;
    item["near_zero"] = rep.near_zero;
    item["clamped"] = rep.clamped;
    item["psd_violations"] = rep.psd_violations;
    item["min_raw_eigenvalue"] = rep.min_raw;
    reps.push_back(item);
  }
  j["replicates"] = reps;
  return j;
}

void write_summary_csv(std::ostream& out, const EmpiricalSummary& summary) {
  write_config_comments(out, ensemble_config_json(summary.config));
  Json scalars;
  scalars["y_T"] = summary.y_T;
  scalars["lambda_max_mean"] = summary.lambda_max_mean;
  scalars["lambda_max_se"] = summary.lambda_max_se;
  scalars["b_theoretical"] = summary.b_theoretical;
  scalars["ks_distance"] = summary.ks_distance;
  scalars["moments_pass"] = summary.moments_pass;
  scalars["ks_pass"] = summary.ks_pass;
  scalars["lambda_max_pass"] = summary.lambda_max_pass;
  write_config_comments(out, scalars);
  for (const auto& w : summary.warnings) out << "# warning=" << w << '\n';
  out << "k,moment_empirical,moment_theoretical,rel_error\n";
  for (std::size_t i = 0; i < summary.moments_empirical.size(); ++i) {
    const double got = summary.moments_empirical[i];
    const double want = summary.moments_theoretical[i];
    out << i + 1 << ',' << format_number(got) << ',' << format_number(want) << ','
        << format_number(rel_error(got, want)) << '\n';
  }
}

void write_eigenvalues_csv(std::ostream& out, const EmpiricalSummary& summary) {
  write_config_comments(out, ensemble_config_json(summary.config));
  out << "replicate,index,eigenvalue\n";
  for (std::size_t r = 0; r < summary.replicates.size(); ++r) {
    const auto& eig = summary.replicates[r].eigenvalues;
    for (std::size_t i = 0; i < eig.size(); ++i) out << r << ',' << i << ',' << format_number(eig[i]) << '\n';
  }
}

}  // namespace lagcov

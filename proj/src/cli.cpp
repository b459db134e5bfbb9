#include "lagcov/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "lagcov/acceptance.hpp"
#include "lagcov/combinatorics.hpp"
#include "lagcov/errors.hpp"
#include "lagcov/matrix_lab.hpp"
#include "lagcov/moments.hpp"
#include "lagcov/output.hpp"
#include "lagcov/spectral_law.hpp"

namespace lagcov {

namespace {

// Above this order the exact pillar tables get slow; switch to doubles.
constexpr int kMaxExactOrder = 64;
constexpr double kNumericAgreement = 1e-12;
constexpr std::uint64_t kDefaultSeed = 42;

struct CommonFlags {
  std::string format;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags, const std::string& default_format) {
  flags.format = default_format;
  cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags.out_path, "Output file (stdout when omitted)");
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

template <typename Int>
Int parse_env_integer(const char* name, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<Int>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(name) + " is not a non-negative integer: " + text);
  }
}

bool is_decimal(const std::string& text) { return text.find_first_of(".eE") != std::string::npos; }

double parse_ratio_double(const std::string& text) {
  double y = 0.0;
  if (is_decimal(text)) {
    std::size_t used = 0;
    y = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("cannot parse y: " + text);
  } else {
    y = parse_rational(text).get_d();
  }
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("y must be positive, got " + text);
  return y;
}

bool close(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= kNumericAgreement * std::max(std::abs(a), std::abs(b));
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// --- moments -------------------------------------------------------------

struct MomentsFlags {
  CommonFlags common;
  std::string y;
  int K = 10;
};

int cmd_moments(const MomentsFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.K < 1) throw DomainError("--K must be >= 1");
  const bool decimal = is_decimal(flags.y);
  const bool exact = !decimal && flags.K <= kMaxExactOrder;
  if (decimal) err << "note: decimal y " << flags.y << " runs in double precision; pass p/q for exact output\n";
  if (!decimal && !exact) err << "note: K > " << kMaxExactOrder << " runs in double precision\n";

  Json config;
  config["subcommand"] = "moments";
  config["y"] = flags.y;
  config["K"] = flags.K;
  config["mode"] = exact ? "exact" : "numeric";

  Output sink(flags.common.out_path, out);
  std::ostream& os = sink.get();
  const bool json = flags.common.format == "json";
  Json rows = Json::array();
  bool all_agree = true;

  if (exact) {
    const AspectRatio y(parse_rational(flags.y));
    const PillarCountTable table = build_tables_by_recursion(flags.K);
    const MomentSequence rec = moment_recursion(flags.K, y);
    if (!json) {
      write_config_comments(os, config);
      os << "k,m_k_num,m_k_den,closed_form,pillar_sum,recursion,agree\n";
    }
    for (int k = 1; k <= flags.K; ++k) {
      const Rational closed = moment_closed_form(k, y);
      const Rational pillars = moment_from_pillars(k, y, table);
      const Rational& recursion = rec.at(k);
      const bool agree = closed == pillars && closed == recursion;
      all_agree = all_agree && agree;
      if (json) {
        Json row;
        row["k"] = k;
        row["m_k"] = to_string(closed);
        row["closed_form"] = to_string(closed);
        row["pillar_sum"] = to_string(pillars);
        row["recursion"] = to_string(recursion);
        row["agree"] = agree;
        rows.push_back(row);
      } else {
        os << k << ',' << closed.get_num().get_str() << ',' << closed.get_den().get_str() << ','
           << to_string(closed) << ',' << to_string(pillars) << ',' << to_string(recursion) << ','
           << (agree ? "true" : "false") << '\n';
      }
    }
  } else {
    const double y = parse_ratio_double(flags.y);
    const auto closed = moments_numeric(flags.K, y);
    const auto rec = moment_recursion_numeric(flags.K, y);
    const PillarCountTable table = flags.K <= kMaxExactOrder ? build_tables_by_recursion(flags.K)
                                                             : build_f_table_closed_form(flags.K);
    if (!json) {
      write_config_comments(os, config);
      os << "k,m_k,closed_form,pillar_sum,recursion,agree\n";
    }
    for (int k = 1; k <= flags.K; ++k) {
      double pillars = 0.0;
      for (int t = 1; t <= k; ++t) pillars += std::pow(y, 2 * k - t) * table.f(t - 1, k).get_d();
      const double c = closed[static_cast<std::size_t>(k - 1)];
      const double r = rec[static_cast<std::size_t>(k - 1)];
      const bool agree = close(c, pillars) && close(c, r);
      all_agree = all_agree && agree;
      if (json) {
        Json row;
        row["k"] = k;
        row["m_k"] = c;
        row["closed_form"] = c;
        row["pillar_sum"] = pillars;
        row["recursion"] = r;
        row["agree"] = agree;
        rows.push_back(row);
      } else {
        os << k << ',' << format_number(c) << ',' << format_number(c) << ',' << format_number(pillars) << ','
           << format_number(r) << ',' << (agree ? "true" : "false") << '\n';
      }
    }
  }
  if (json) {
    Json doc;
    doc["config"] = config;
    doc["rows"] = rows;
    doc["all_agree"] = all_agree;
    os << doc.dump(2) << '\n';
  }
  if (!all_agree) {
    err << "error: moment routes disagree\n";
    return kExitRouteDisagreement;
  }
  return kExitOk;
}

// --- density -------------------------------------------------------------

struct DensityFlags {
  CommonFlags common;
  std::string y;
  int grid = 512;
  std::string curve = "density";
};

int cmd_density(const DensityFlags& flags, std::ostream& out) {
  if (flags.grid < 2) throw DomainError("--grid must be >= 2");
  const double y = parse_ratio_double(flags.y);
  const SpectralLaw law = make_spectral_law(y, flags.grid);
  const double mass = continuous_mass(y);

  Json config;
  config["subcommand"] = "density";
  config["y"] = flags.y;
  config["grid"] = flags.grid;
  if (flags.common.format == "csv") config["curve"] = flags.curve;

  Json meta;
  meta["y"] = y;
  meta["a"] = law.endpoints.a;
  meta["b"] = law.endpoints.b;
  meta["atom_at_zero"] = law.atom_at_zero;
  meta["continuous_mass"] = mass;
  meta["npoints"] = law.grid.size();

  Output sink(flags.common.out_path, out);
  std::ostream& os = sink.get();
  if (flags.common.format == "json") {
    Json doc;
    doc["config"] = config;
    for (const auto& [key, value] : meta.items()) doc[key] = value;
    Json xs = Json::array();
    Json dens = Json::array();
    Json cdf = Json::array();
    for (std::size_t i = 0; i < law.grid.size(); ++i) {
      xs.push_back(law.grid[i].x);
      dens.push_back(law.grid[i].value);
      cdf.push_back(law.cdf[i].value);
    }
    doc["x"] = xs;
    doc["density"] = dens;
    doc["cdf"] = cdf;
    os << doc.dump(2) << '\n';
    return kExitOk;
  }
  write_config_comments(os, config);
  meta.erase("y");  // already in the config lines
  write_config_comments(os, meta);
  const bool want_cdf = flags.curve == "cdf";
  os << (want_cdf ? "x,cdf\n" : "x,density\n");
  for (std::size_t i = 0; i < law.grid.size(); ++i) {
    const double v = want_cdf ? law.cdf[i].value : law.grid[i].value;
    os << format_number(law.grid[i].x) << ',' << format_number(v) << '\n';
  }
  return kExitOk;
}

// --- simulate ------------------------------------------------------------

struct SimulateFlags {
  CommonFlags common;
  std::size_t p = 0;
  std::size_t T = 0;
  std::size_t s = 1;
  std::string dist = "gaussian";
  std::size_t reps = 20;
  std::optional<std::uint64_t> seed;
  int K = 4;
  std::optional<unsigned> threads;
  std::string dump_eigs;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (auto v = env("LAGCOV_SEED")) return parse_env_integer<std::uint64_t>("LAGCOV_SEED", *v);
  return kDefaultSeed;
}

unsigned resolve_threads(const std::optional<unsigned>& flag) {
  if (flag) return *flag;
  if (auto v = env("LAGCOV_THREADS")) return parse_env_integer<unsigned>("LAGCOV_THREADS", *v);
  return 1;
}

int cmd_simulate(const SimulateFlags& flags, std::ostream& out) {
  EnsembleConfig config;
  config.p = flags.p;
  config.T = flags.T;
  config.lag = flags.s;
  config.distribution = parse_distribution(flags.dist);
  config.replicates = flags.reps;
  config.seed = resolve_seed(flags.seed);
  config.max_moment_order = flags.K;
  config.threads = resolve_threads(flags.threads);
  config.validate();

  const EmpiricalSummary summary = run_ensemble(config);
  {
    Output sink(flags.common.out_path, out);
    if (flags.common.format == "json") {
      sink.get() << summary_to_json(summary).dump(2) << '\n';
    } else {
      write_summary_csv(sink.get(), summary);
    }
  }
  if (!flags.dump_eigs.empty()) {
    std::ofstream file(flags.dump_eigs);
    if (!file) throw std::invalid_argument("cannot open eigenvalue dump file " + flags.dump_eigs);
    write_eigenvalues_csv(file, summary);
  }
  return kExitOk;
}

// --- verify --------------------------------------------------------------

struct VerifyFlags {
  CommonFlags common;
  bool quick = false;
  bool full = false;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

int cmd_verify(const VerifyFlags& flags, std::ostream& out) {
  AcceptanceOptions options;
  options.scale = flags.quick ? AcceptanceScale::kQuick
                              : (flags.full ? AcceptanceScale::kFull : AcceptanceScale::kReduced);
  options.seed = resolve_seed(flags.seed);
  options.threads = resolve_threads(flags.threads);
  const auto results = run_acceptance(options);

  Output sink(flags.common.out_path, out);
  std::ostream& os = sink.get();
  if (flags.common.format == "json") {
    Json doc;
    Json config;
    config["subcommand"] = "verify";
    config["scale"] = flags.quick ? "quick" : (flags.full ? "full" : "reduced");
    config["seed"] = options.seed;
    doc["config"] = config;
    Json items = Json::array();
    for (const auto& r : results) {
      Json item;
      item["id"] = r.id;
      item["name"] = r.name;
      item["passed"] = r.passed;
      item["skipped"] = r.skipped;
      item["detail"] = r.detail;
      item["seconds"] = r.seconds;
      items.push_back(item);
    }
    doc["criteria"] = items;
    doc["all_passed"] = all_passed(results);
    os << doc.dump(2) << '\n';
  } else {
    print_report(os, results);
  }
  return all_passed(results) ? kExitOk : kExitAcceptanceFailed;
}

// --- tables --------------------------------------------------------------

struct TablesFlags {
  CommonFlags common;
  int max_k = 10;
};

int cmd_tables(const TablesFlags& flags, std::ostream& out) {
  if (flags.max_k < 1) throw DomainError("--max-k must be >= 1");
  const PillarCountTable table = build_tables_by_recursion(flags.max_k);
  Json config;
  config["subcommand"] = "tables";
  config["max_k"] = flags.max_k;
  Output sink(flags.common.out_path, out);
  std::ostream& os = sink.get();
  if (flags.common.format == "csv") {
    write_config_comments(os, config);
    table.write_csv(os);
    return kExitOk;
  }
  Json rows = Json::array();
  for (int k = 1; k <= flags.max_k; ++k) {
    for (int m = 0; m <= k; ++m) {
      Json row;
      row["k"] = k;
      row["m"] = m;
      row["f"] = to_string(table.f(m, k));
      row["g"] = to_string(table.g(m, k));
      rows.push_back(row);
    }
  }
  Json doc;
  doc["config"] = config;
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lag-s auto-covariance spectra: exact moments, limiting law, Monte Carlo checks", "lagcov"};
  app.require_subcommand(1);

  MomentsFlags moments;
  auto* c_moments = app.add_subcommand("moments", "Limiting moments m_1..m_K by three routes");
  c_moments->add_option("--y", moments.y, "Aspect ratio as p/q, integer, or decimal")->required();
  c_moments->add_option("--K", moments.K, "Highest moment order");
  add_common(c_moments, moments.common, "csv");

  DensityFlags density;
  auto* c_density = app.add_subcommand("density", "Limiting density and CDF on a grid");
  c_density->add_option("--y", density.y, "Aspect ratio")->required();
  c_density->add_option("--grid", density.grid, "Number of grid points");
  c_density->add_option("--curve", density.curve, "CSV table to write")->check(CLI::IsMember({"density", "cdf"}));
  add_common(c_density, density.common, "csv");

  SimulateFlags simulate;
  auto* c_simulate = app.add_subcommand("simulate", "Monte Carlo ensemble of lag-s auto-covariance spectra");
  c_simulate->add_option("--p", simulate.p, "Dimension")->required();
  c_simulate->add_option("--T", simulate.T, "Sample length")->required();
  c_simulate->add_option("--s", simulate.s, "Lag");
  c_simulate->add_option("--dist", simulate.dist, "gaussian, rademacher or uniform");
  c_simulate->add_option("--reps", simulate.reps, "Replicates");
  c_simulate->add_option("--seed", simulate.seed, "Master seed (default LAGCOV_SEED or 42)");
  c_simulate->add_option("--K", simulate.K, "Highest empirical moment order");
  c_simulate->add_option("--threads", simulate.threads, "Worker threads, 0 = all cores (default LAGCOV_THREADS or 1)");
  c_simulate->add_option("--dump-eigs", simulate.dump_eigs, "Write replicate,index,eigenvalue CSV here");
  add_common(c_simulate, simulate.common, "json");

  VerifyFlags verify;
  auto* c_verify = app.add_subcommand("verify", "Run the acceptance checks (reduced scale by default)");
  c_verify->add_flag("--quick", verify.quick, "Skip the simulation checks");
  c_verify->add_flag("--full", verify.full, "Run simulations at full scale");
  c_verify->add_option("--seed", verify.seed, "Master seed");
  c_verify->add_option("--threads", verify.threads, "Worker threads for simulations");
  add_common(c_verify, verify.common, "csv");

  TablesFlags tables;
  auto* c_tables = app.add_subcommand("tables", "Pillar count tables f_m(k), g_m(k)");
  c_tables->add_option("--max-k", tables.max_k, "Largest k");
  add_common(c_tables, tables.common, "csv");

  std::vector<const char*> argv;
  argv.push_back("lagcov");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*c_moments) return cmd_moments(moments, out, err);
    if (*c_density) return cmd_density(density, out);
    if (*c_simulate) return cmd_simulate(simulate, out);
    if (*c_verify) return cmd_verify(verify, out);
    if (*c_tables) return cmd_tables(tables, out);
  } catch (const EigensolverError& e) {
    err << "eigensolver error: " << e.what() << '\n';
    return kExitEigensolver;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalLaw;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lagcov

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lagcov/acceptance.hpp"
#include "lagcov/cli.hpp"

using namespace lagcov;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

bool has_line(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lagcov_test_" + name);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("moments subcommand, exact mode") {
  const Run r = run({"moments", "--y", "1", "--K", "3"});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "# mode=exact"));
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "k,m_k_num,m_k_den,closed_form,pillar_sum,recursion,agree");
  CHECK(lines[1] == "1,1,1,1,1,1,true");
  CHECK(lines[2] == "2,3,1,3,3,3,true");
  CHECK(lines[3] == "3,12,1,12,12,12,true");

  const Run half = run({"moments", "--y", "1/2", "--K", "3"});
  CHECK(half.code == kExitOk);
  CHECK(has_line(half.out, "3,33,32,33/32,33/32,33/32,true"));
}

TEST_CASE("moments subcommand, numeric mode and json") {
  const Run r = run({"moments", "--y", "0.5", "--K", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("double precision") != std::string::npos);
  CHECK(has_line(r.out, "# mode=numeric"));
  CHECK(has_line(r.out, "3,1.03125,1.03125,1.03125,1.03125,true"));

  const Run big = run({"moments", "--y", "1/3", "--K", "70"});
  CHECK(big.code == kExitOk);
  CHECK(data_lines(big.out).size() == 71);

  const Run j = run({"moments", "--y", "2", "--K", "4", "--format", "json"});
  CHECK(j.code == kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["config"]["y"] == "2");
  CHECK(doc["rows"].size() == 4);
  CHECK(doc["rows"][0]["m_k"] == "2");
  CHECK(doc["all_agree"] == true);
}

TEST_CASE("moments subcommand rejects bad input") {
  CHECK(run({"moments", "--y", "0", "--K", "1"}).code == kExitUsage);
  CHECK(run({"moments", "--y", "0.0", "--K", "1"}).code == kExitUsage);
  CHECK(run({"moments", "--y", "1", "--K", "0"}).code == kExitUsage);
  CHECK(run({"moments", "--y", "abc"}).code == kExitUsage);
  CHECK(run({"moments", "--y", "1/0"}).code == kExitUsage);
  CHECK(run({"moments", "--K", "3"}).code == kExitUsage);
  CHECK(run({"moments", "--y", "1", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("density subcommand") {
  const Run r = run({"density", "--y", "1", "--grid", "512"});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "# a=0"));
  CHECK(has_line(r.out, "# b=6.75"));
  CHECK(has_line(r.out, "# npoints=512"));
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 513);
  CHECK(lines[0] == "x,density");
  double prev = -1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double x = std::stod(lines[i].substr(0, lines[i].find(',')));
    CHECK(x >= prev);
    CHECK(x >= 0.0);
    CHECK(x <= 6.75);
    prev = x;
  }

  const Run two = run({"density", "--y", "2", "--grid", "512", "--curve", "cdf"});
  CHECK(two.code == kExitOk);
  CHECK(has_line(two.out, "# atom_at_zero=0.5"));
  CHECK(data_lines(two.out)[0] == "x,cdf");

  const Run j = run({"density", "--y", "1/2", "--grid", "64", "--format", "json"});
  CHECK(j.code == kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["npoints"] == 64);
  CHECK(doc["a"] == 0.0);
  CHECK(doc["x"].size() == 64);
  CHECK(doc["cdf"].back().get<double>() == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(run({"density", "--y", "-2"}).code == kExitUsage);
  CHECK(run({"density", "--y", "1", "--grid", "1"}).code == kExitUsage);
  CHECK(run({"density", "--y", "1", "--curve", "pdf"}).code == kExitUsage);
}

TEST_CASE("simulate subcommand is deterministic") {
  const std::vector<std::string> args = {"simulate", "--p", "400", "--T", "800", "--s", "1",
                                         "--dist", "gaussian", "--reps", "20", "--seed", "42", "--threads", "0"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["config"]["seed"] == 42);
  CHECK(doc["y_T"] == 0.5);
  CHECK(doc["checks"]["moments_pass"] == true);
  CHECK(doc["checks"]["ks_pass"] == true);
  CHECK(doc["checks"]["lambda_max_pass"] == true);
  CHECK(doc.contains("warnings"));
  CHECK(doc["config"].contains("threads") == false);
}

TEST_CASE("simulate subcommand reports the rank bound") {
  const auto eigs = temp_path("eigs.csv");
  const Run r = run({"simulate", "--p", "100", "--T", "50", "--reps", "3", "--seed", "1", "--dump-eigs", eigs.string()});
  REQUIRE(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["replicates"].size() == 3);
  for (const auto& rep : doc["replicates"]) CHECK(rep["near_zero"].get<int>() >= 50);
  const auto lines = data_lines(slurp(eigs));
  CHECK(lines[0] == "replicate,index,eigenvalue");
  CHECK(lines.size() == 301);
  std::filesystem::remove(eigs);
}

TEST_CASE("simulate subcommand flags and environment") {
  const Run missing = run({"simulate", "--T", "50"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("--p") != std::string::npos);
  CHECK(missing.err.find("Usage") != std::string::npos);
  CHECK(run({"simulate", "--p", "10", "--T", "20", "--dist", "cauchy"}).code == kExitUsage);
  CHECK(run({"simulate", "--p", "5000", "--T", "20"}).code == kExitUsage);

  const auto out = temp_path("summary.csv");
  const Run csv = run({"simulate", "--p", "20", "--T", "40", "--reps", "2", "--format", "csv", "--out", out.string()});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.empty());
  const std::string text = slurp(out);
  CHECK(has_line(text, "# p=20"));
  CHECK(data_lines(text)[0] == "k,moment_empirical,moment_theoretical,rel_error");
  std::filesystem::remove(out);

  setenv("LAGCOV_SEED", "977", 1);
  const Run env = run({"simulate", "--p", "20", "--T", "40", "--reps", "2"});
  const Run flag = run({"simulate", "--p", "20", "--T", "40", "--reps", "2", "--seed", "977"});
  const Run over = run({"simulate", "--p", "20", "--T", "40", "--reps", "2", "--seed", "3"});
  unsetenv("LAGCOV_SEED");
  CHECK(env.out == flag.out);
  CHECK(nlohmann::json::parse(over.out)["config"]["seed"] == 3);

  setenv("LAGCOV_THREADS", "3", 1);
  const Run threaded = run({"simulate", "--p", "20", "--T", "40", "--reps", "5", "--seed", "9"});
  setenv("LAGCOV_THREADS", "zero", 1);
  const Run bad_env = run({"simulate", "--p", "20", "--T", "40", "--reps", "5", "--seed", "9"});
  unsetenv("LAGCOV_THREADS");
  const Run serial = run({"simulate", "--p", "20", "--T", "40", "--reps", "5", "--seed", "9"});
  CHECK(threaded.out == serial.out);
  CHECK(bad_env.code == kExitUsage);
}

TEST_CASE("tables subcommand") {
  const Run r = run({"tables", "--max-k", "3"});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "# max_k=3"));
  CHECK(has_line(r.out, "3,1,6,4"));
  CHECK(has_line(r.out, "3,2,5,2"));
  const Run j = run({"tables", "--max-k", "2", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["rows"].size() == 5);
  CHECK(run({"tables", "--max-k", "0"}).code == kExitUsage);
}

TEST_CASE("verify --quick runs the exact criteria only") {
  const Run r = run({"verify", "--quick"});
  CHECK(r.code == kExitOk);
  for (const int id : {1, 2, 3, 4, 5, 6, 10}) CHECK(r.out.find("[PASS] " + std::to_string(id) + " ") != std::string::npos);
  for (const int id : {7, 8, 9}) CHECK(r.out.find("[SKIP] " + std::to_string(id) + " ") != std::string::npos);
  const Run j = run({"verify", "--quick", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["all_passed"] == true);
}

TEST_CASE("broken closed form is caught by the combinatorics criterion") {
  AcceptanceOptions options;
  options.scale = AcceptanceScale::kQuick;
  // Missing the 1/k factor.
  options.f_closed_form = [](int m, int k) { return binomial(2 * k, m) * binomial(k, m + 1); };
  const auto results = run_acceptance(options);
  CHECK_FALSE(all_passed(results));
  for (const auto& r : results) {
    if (r.id == 2) {
      CHECK_FALSE(r.passed);
      CHECK(r.name.find("combinatorics") != std::string::npos);
    } else {
      CHECK(r.passed);
    }
  }
}

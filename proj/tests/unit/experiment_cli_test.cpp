#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiment.hpp"

using namespace coxmal;
using namespace coxmal::cli;

namespace {

ExperimentConfig make(std::string command, std::vector<std::string> groups = {}, std::vector<double> q = {}) {
  ExperimentConfig c;
  c.command = std::move(command);
  c.groups = std::move(groups);
  c.q = std::move(q);
  return c;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("coxmal_test_" + name)).string();
}

nlohmann::json without_clock(nlohmann::json j) {
  j.erase("wall_clock_seconds");
  return j;
}

}  // namespace

TEST_CASE("q lists") {
  CHECK(parse_q_list("0.5") == std::vector<double>{0.5});
  CHECK(parse_q_list("(1, 1, 1)") == std::vector<double>{1, 1, 1});
  CHECK(parse_q_list("0.25,0.5") == std::vector<double>{0.25, 0.5});
  CHECK_THROWS_AS(parse_q_list("0.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_q_list("-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_q_list(""), std::invalid_argument);
}

TEST_CASE("config files") {
  std::istringstream in(R"(# suite settings
seed = 11
threads = 2

[verify]
group = B3, D4, I2(5)
q = 0.5, 2
tolerance = 1e-9

[clt]
group = B50 x B50
samples = 5000
)");
  const auto sections = parse_config(in);
  auto verify = make("verify");
  apply_config(sections, verify);
  CHECK(verify.seed == 11);
  CHECK(verify.threads == 2);
  CHECK(verify.groups == std::vector<std::string>{"B3", "D4", "I2(5)"});
  CHECK(verify.q == std::vector<double>{0.5, 2.0});
  CHECK(verify.tolerance.value() == 1e-9);
  auto clt = make("clt");
  apply_config(sections, clt);
  CHECK(clt.groups == std::vector<std::string>{"B50 x B50"});
  CHECK(clt.samples == 5000);
  CHECK_FALSE(clt.tolerance.has_value());

  std::istringstream bad("[verify]\nunknown = 1\n");
  auto c = make("verify");
  CHECK_THROWS_AS(apply_config(parse_config(bad), c), std::invalid_argument);
  std::istringstream broken("seed\n");
  CHECK_THROWS_AS(parse_config(broken), std::invalid_argument);
}

TEST_CASE("config echo round-trips") {
  auto c = make("clt", {"B50 x B50", "I2(5) x I2(5)"}, {1.0, 1.0});
  c.seed = 99;
  c.samples = 1234;
  c.mode = Mode::monte_carlo;
  c.tolerance = 1e-8;
  c.trace = "trace.csv";
  const auto back = ExperimentConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(ExperimentConfig::from_json(make("verify").to_json()).to_json() == make("verify").to_json());
}

TEST_CASE("default verification run passes") {
  const auto report = cmd_verify(make("verify"));
  CHECK(report.checks().size() > 1000);
  CHECK(report.failures() == 0);
  std::ostringstream out, err;
  CHECK(run(make("verify"), out, err) == kExitPass);
}

TEST_CASE("verification exit codes") {
  std::ostringstream out, err;
  CHECK(run(make("verify", {"D3"}), out, err) == kExitUsage);
  CHECK(err.str().find("D3") != std::string::npos);
  CHECK(run(make("verify", {"B10"}), out, err) == kExitUsage);
  CHECK(run(make("verify", {"B2 x B2"}), out, err) == kExitUsage);
  auto tampered = make("verify");
  tampered.tolerance = 0.0;
  CHECK(run(tampered, out, err) == kExitFail);
  CHECK(cmd_verify(tampered).failures() > 0);
  CHECK(run(make("nonsense"), out, err) == kExitUsage);
}

TEST_CASE("every failing check carries its value and bound") {
  auto tampered = make("verify", {"B3"}, {0.5});
  tampered.tolerance = 0.0;
  const auto j = cmd_verify(tampered).to_json();
  int fails = 0;
  for (const auto& c : j["checks"]) {
    if (c["status"] == "FAIL") {
      ++fails;
      CHECK(c.contains("value"));
      CHECK(c.contains("bound"));
    }
  }
  CHECK(fails > 0);
}

TEST_CASE("Monte Carlo verification is deterministic across thread counts") {
  auto a = make("verify", {"B6", "D5", "I2(5)"}, {0.5});
  a.mode = Mode::monte_carlo;
  a.samples = 20000;
  a.threads = 1;
  auto b = a;
  b.threads = 5;
  auto ra = cmd_verify(a);
  auto rb = cmd_verify(b);
  CHECK(ra.failures() == 0);
  ra.config() = rb.config() = nlohmann::json::object();
  CHECK(without_clock(ra.to_json()).dump() == without_clock(rb.to_json()).dump());
}

TEST_CASE("exact distribution artifact") {
  std::ostringstream out;
  const auto report = cmd_exact_dist(make("exact-dist", {"B3"}, {1.0}), out);
  CHECK(report.passed());
  std::istringstream lines(out.str());
  std::string line;
  double total = 0.0;
  bool in_body = false;
  while (std::getline(lines, line)) {
    if (line == "value,probability") {
      in_body = true;
      continue;
    }
    if (!in_body || line.empty() || line[0] == '#') continue;
    total += std::stod(line.substr(line.find(',') + 1));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // Every probability is a multiple of 1/48 at q = 1.
  CHECK(out.str().find("0.0208333333333333") != std::string::npos);
}

TEST_CASE("moment table") {
  std::ostringstream out;
  const auto report = cmd_moments(make("moments", {"B4"}, {1.0}), out);
  CHECK(report.passed());
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header.rfind("group,q,mode,mean_formula,mean_measured,", 0) == 0);
  CHECK(row.rfind("B4,1,exact,4,4,", 0) == 0);
}

TEST_CASE("sample output is byte-identical for a fixed seed") {
  auto c = make("sample", {"B5 x I2(4)"}, {0.5});
  c.seed = 7;
  c.samples = 10000;
  std::ostringstream a, b, d;
  cmd_sample(c, a);
  cmd_sample(c, b);
  c.threads = 3;
  cmd_sample(c, d);
  CHECK(a.str() == b.str());
  CHECK(a.str() == d.str());
  const auto text = a.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 10000);
  c.seed = 8;
  std::ostringstream e;
  cmd_sample(c, e);
  CHECK(e.str() != a.str());
}

TEST_CASE("CLT report for a fixed small product") {
  auto c = make("clt", {"I2(5) x I2(5)", "B30"}, {1.0});
  c.samples = 20000;
  const auto trace = temp_path("trace.csv");
  c.trace = trace;
  auto report = cmd_clt(c);
  const auto runs = report.results()["runs"];
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].contains("w2_exact"));
  CHECK(runs[0]["w2"].get<double>() >= 0.5 * runs[0]["w2_exact"].get<double>());
  CHECK_FALSE(runs[1].contains("w2_exact"));
  CHECK(std::filesystem::exists(temp_path("trace_0.csv")));
  CHECK(std::filesystem::exists(temp_path("trace_1.csv")));
  std::filesystem::remove(temp_path("trace_0.csv"));
  std::filesystem::remove(temp_path("trace_1.csv"));

  auto frozen = make("clt", {"B3"}, {1e-300});
  frozen.samples = 1000;
  std::ostringstream out, err;
  CHECK(run(frozen, out, err) == kExitUsage);
}

TEST_CASE("reports are written as JSON") {
  auto c = make("verify", {"B2"}, {0.5});
  c.out = temp_path("report.json");
  std::ostringstream out, err;
  REQUIRE(run(c, out, err) == kExitPass);
  std::ifstream file(c.out);
  const auto j = nlohmann::json::parse(file);
  CHECK(j["command"] == "verify");
  CHECK(j["config"]["groups"] == nlohmann::json::array({"B2"}));
  CHECK(j.contains("version"));
  CHECK(j.contains("wall_clock_seconds"));
  CHECK(ExperimentConfig::from_json(j["config"]).to_json() == c.to_json());
  std::filesystem::remove(c.out);
}

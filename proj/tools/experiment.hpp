#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxmal/normal_distance.hpp"
#include "coxmal/report.hpp"

namespace coxmal::cli {

/// Everything a command needs; echoed into every report.
struct ExperimentConfig {
  std::string command;
  std::vector<std::string> groups;  // empty: the default verification grid
  std::vector<double> q;            // grid for verify/moments, one per factor otherwise
  std::uint64_t seed = 7;
  std::uint64_t samples = 100000;
  Mode mode = Mode::exact;
  std::string out;     // artifact path (report path for verify and clt)
  std::string report;  // optional JSON report path for sample, exact-dist and moments
  std::string trace;   // optional quantile-trace CSV for clt
  unsigned threads = 0;
  std::optional<double> tolerance;
  std::string statistic = "t";
  bool verbose = false;

  Tolerances tolerances() const { return tolerance ? Tolerances::uniform(*tolerance) : Tolerances{}; }
  nlohmann::json to_json() const;
  /// Inverse of to_json; missing keys keep their defaults.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

std::vector<std::string> default_groups();
std::vector<double> default_q_grid();

/// "0.5", "0.5,1" or "(0.5, 1)". Throws std::invalid_argument.
std::vector<double> parse_q_list(std::string_view text);

/// `key = value` lines with optional `[command]` sections; `#` starts a
/// comment. Keys outside any section apply to every command.
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;
ConfigSections parse_config(std::istream& in);
/// Applies the global section, then the command's own section.
void apply_config(const ConfigSections& sections, ExperimentConfig& config);

Report cmd_verify(const ExperimentConfig& config);
Report cmd_clt(const ExperimentConfig& config);
Report cmd_sample(const ExperimentConfig& config, std::ostream& out);
Report cmd_exact_dist(const ExperimentConfig& config, std::ostream& out);
Report cmd_moments(const ExperimentConfig& config, std::ostream& out);

/// Runs the named command, writes its artifacts and report, prints one line
/// per non-passing check (every check with `verbose`) and returns the exit
/// code. Errors in the input are reported on `err` with kExitUsage.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace coxmal::cli

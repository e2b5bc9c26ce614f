#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace coxmal {

enum class Relation { at_most, at_least };

/// One numeric verification: `value` compared against `bound`.
struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Relation relation = Relation::at_most;
  bool pass = false;
  /// Inapplicable checks are reported but never fail a run.
  bool applicable = true;
  std::string detail;
  nlohmann::json extra = nlohmann::json::object();

  static Check at_most(std::string name, double value, double bound, std::string detail = {});
  static Check at_least(std::string name, double value, double bound, std::string detail = {});

  Check& informational(std::string why);
  /// "PASS", "FAIL" or "INFO".
  std::string_view status() const noexcept;
  /// "FAIL  name  value=... <= bound=...  detail".
  std::string line() const;
};

/// Tolerances for exact comparisons. A single override sets all of them.
struct Tolerances {
  double relative = 1e-10;
  double total_variation = 1e-12;
  double reconstruction = 1e-8;
  double probability = 1e-10;

  static Tolerances uniform(double t) { return {t, t, t, t}; }
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void add(Check c) { checks_.push_back(std::move(c)); }
  void add(std::vector<Check> cs);

  const std::vector<Check>& checks() const noexcept { return checks_; }
  std::size_t failures() const noexcept;
  bool passed() const noexcept { return failures() == 0; }

  nlohmann::json& config() noexcept { return config_; }
  nlohmann::json& results() noexcept { return results_; }
  void set_wall_clock(double seconds) noexcept { wall_clock_ = seconds; }

  nlohmann::json to_json() const;

 private:
  std::string command_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json results_ = nlohmann::json::object();
  std::vector<Check> checks_;
  double wall_clock_ = 0.0;
};

nlohmann::json to_json(const Check& c);

}  // namespace coxmal

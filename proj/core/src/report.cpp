#include "coxmal/report.hpp"

#include <cmath>
#include <sstream>

#ifndef COXMAL_VERSION
#define COXMAL_VERSION "unknown"
#endif

namespace coxmal {

namespace {

bool holds(double value, Relation r, double bound) {
  if (std::isnan(value) || std::isnan(bound)) return false;
  return r == Relation::at_most ? value <= bound : value >= bound;
}

// JSON has no infinities; they are written as strings.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

Check Check::at_most(std::string name, double value, double bound, std::string detail) {
  Check c{std::move(name), value, bound, Relation::at_most, false, true, std::move(detail)};
  c.pass = holds(value, c.relation, bound);
  return c;
}

Check Check::at_least(std::string name, double value, double bound, std::string detail) {
  Check c{std::move(name), value, bound, Relation::at_least, false, true, std::move(detail)};
  c.pass = holds(value, c.relation, bound);
  return c;
}

Check& Check::informational(std::string why) {
  applicable = false;
  if (!why.empty()) detail = detail.empty() ? why : detail + "; " + why;
  return *this;
}

std::string_view Check::status() const noexcept {
  if (!applicable) return "INFO";
  return pass ? "PASS" : "FAIL";
}

std::string Check::line() const {
  std::ostringstream out;
  out.precision(10);
  out << status() << "  " << name << "  value=" << value << (relation == Relation::at_most ? " <= " : " >= ")
      << "bound=" << bound;
  if (!applicable && !pass) out << " (violated)";
  if (!detail.empty()) out << "  " << detail;
  return out.str();
}

void Report::add(std::vector<Check> cs) {
  for (auto& c : cs) checks_.push_back(std::move(c));
}

std::size_t Report::failures() const noexcept {
  std::size_t n = 0;
  for (const auto& c : checks_) n += (c.applicable && !c.pass) ? 1 : 0;
  return n;
}

nlohmann::json to_json(const Check& c) {
  nlohmann::json j = {
      {"name", c.name},
      {"value", number(c.value)},
      {"bound", number(c.bound)},
      {"relation", c.relation == Relation::at_most ? "<=" : ">="},
      {"status", std::string(c.status())},
      {"pass", c.pass},
      {"applicable", c.applicable},
  };
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.extra.empty()) j["extra"] = c.extra;
  return j;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) checks.push_back(coxmal::to_json(c));
  return {
      {"command", command_},
      {"config", config_},
      {"results", results_},
      {"checks", checks},
      {"summary", {{"checks", checks_.size()}, {"failures", failures()}, {"passed", passed()}}},
      {"wall_clock_seconds", wall_clock_},
      {"version", COXMAL_VERSION},
  };
}

}  // namespace coxmal

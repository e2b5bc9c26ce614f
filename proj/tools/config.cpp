#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "experiment.hpp"

namespace coxmal::cli {

namespace {

std::string trim(std::string_view s) {
  auto begin = s.begin();
  auto end = s.end();
  while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
  while (end != begin && std::isspace(static_cast<unsigned char>(*(end - 1)))) --end;
  return std::string(begin, end);
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      items.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  items.push_back(trim(current));
  items.erase(std::remove(items.begin(), items.end(), std::string{}), items.end());
  return items;
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T x{};
  in >> x;
  if (!in || !in.eof()) throw std::invalid_argument("config: bad value for " + key + ": " + value);
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": " + value);
}

void apply_entry(const std::string& key, const std::string& raw, ExperimentConfig& config) {
  const std::string value = unquote(raw);
  if (key == "group" || key == "groups") {
    config.groups = split_list(value);
  } else if (key == "q") {
    config.q = parse_q_list(value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "samples") {
    config.samples = parse_number<std::uint64_t>(key, value);
  } else if (key == "mode") {
    config.mode = parse_mode(value);
  } else if (key == "out") {
    config.out = value;
  } else if (key == "report") {
    config.report = value;
  } else if (key == "trace") {
    config.trace = value;
  } else if (key == "threads") {
    config.threads = parse_number<unsigned>(key, value);
  } else if (key == "tolerance") {
    config.tolerance = parse_number<double>(key, value);
  } else if (key == "statistic") {
    config.statistic = std::string(statistic_name(parse_statistic(value)));
  } else if (key == "verbose") {
    config.verbose = parse_bool(key, value);
  } else {
    throw std::invalid_argument("config: unknown key " + key);
  }
}

}  // namespace

std::vector<double> parse_q_list(std::string_view text) {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::vector<double> q;
  for (const auto& item : split_list(body)) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument("bad q value: " + item);
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("q must be positive and finite: " + item);
    q.push_back(x);
  }
  if (q.empty()) throw std::invalid_argument("empty q list");
  return q;
}

ConfigSections parse_config(std::istream& in) {
  ConfigSections sections;
  std::string section;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw std::invalid_argument("config line " + std::to_string(number) + ": bad section");
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      sections[section];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
    sections[section][key] = trim(std::string_view(text).substr(eq + 1));
  }
  return sections;
}

void apply_config(const ConfigSections& sections, ExperimentConfig& config) {
  for (const std::string& name : {std::string{}, config.command}) {
    const auto it = sections.find(name);
    if (it == sections.end()) continue;
    for (const auto& [key, value] : it->second) apply_entry(key, value, config);
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{
      {"command", command},   {"groups", groups},   {"q", q},
      {"seed", seed},         {"samples", samples}, {"mode", std::string(mode_name(mode))},
      {"out", out},           {"report", report},   {"trace", trace},
      {"threads", threads},   {"statistic", statistic},
      {"verbose", verbose},
  };
  j["tolerance"] = tolerance ? nlohmann::json(*tolerance) : nlohmann::json(nullptr);
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.command = j.value("command", c.command);
  c.groups = j.value("groups", c.groups);
  c.q = j.value("q", c.q);
  c.seed = j.value("seed", c.seed);
  c.samples = j.value("samples", c.samples);
  c.mode = parse_mode(j.value("mode", std::string(mode_name(c.mode))));
  c.out = j.value("out", c.out);
  c.report = j.value("report", c.report);
  c.trace = j.value("trace", c.trace);
  c.threads = j.value("threads", c.threads);
  c.statistic = j.value("statistic", c.statistic);
  c.verbose = j.value("verbose", c.verbose);
  if (j.contains("tolerance") && !j["tolerance"].is_null()) c.tolerance = j["tolerance"].get<double>();
  return c;
}

}  // namespace coxmal::cli

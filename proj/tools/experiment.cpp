#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "coxmal/coxmal.hpp"

namespace coxmal::cli {

namespace {

std::string format_number(double x) {
  std::ostringstream out;
  out.precision(15);
  out << x;
  return out.str();
}

McOptions mc_options(const ExperimentConfig& config) { return {config.samples, config.seed, config.threads}; }

std::vector<std::string> groups_or(const ExperimentConfig& config, std::vector<std::string> fallback) {
  return config.groups.empty() ? fallback : config.groups;
}

Factor single_factor(const std::string& text) {
  const auto group = parse_group(text);
  if (!group.irreducible()) throw std::invalid_argument("expected one irreducible group, got " + text);
  return group.factors.front();
}

nlohmann::json law_to_json(const DiscreteDistribution& d) {
  auto rows = nlohmann::json::array();
  for (std::size_t k = 0; k < d.size(); ++k) rows.push_back({d.support()[k], d.mass()[k]});
  return rows;
}

/// Empirical mean within five standard errors of the closed form.
Check empirical_mean_check(const Factor& g, double q, const DiscreteDistribution& law) {
  const auto s = summarize(law);
  const double gap = std::abs(s.mean - mean_two_sided(g, q));
  const double bound = 5.0 * s.standard_error;
  auto c = Check::at_most("empirical mean of t within 5 SE [" + label(g, q) + "]", gap, bound);
  c.extra = {{"mean", s.mean}, {"standard_error", s.standard_error}, {"count", s.count}};
  return c;
}

void exact_checks(Report& report, const Factor& g, double q, const Tolerances& tol) {
  report.add(normalization_check(g, q, tol));
  report.add(mean_check(g, q, tol));
  report.add(descent_indicator_mean_check(g, q, tol));
  if (!g.has_window()) return;
  report.add(cube_moment_bound_check(g, q));
  report.add(variance_bounds_check(g, q));
  report.add(size_bias_law_check(g, q, tol));
  report.add(covariance_type_checks(g, q, tol));
  report.add(smooth_test_checks(g, q));
  report.add(tail_bound_check(g, q, Mode::exact));
  report.add(w1_bound_check(g, q, Mode::exact));
  if (g.kind() == Kind::A) return;
  report.add(reversal_identity_check(g, q, Statistic::two_sided, tol));
  report.add(reversal_identity_check(g, q, Statistic::length, tol));
  const int n = g.window_size();
  for (int i = 1; i <= n; ++i) {
    for (int a = -n; a <= n; ++a) {
      if (a != 0) report.add(pattern_probability_bound_check(g, q, {i}, {a}));
    }
  }
}

void monte_carlo_checks(Report& report, const Factor& g, double q, const McOptions& mc) {
  const auto law = empirical_distribution(MallowsSpec::make(g, q), Statistic::two_sided, mc);
  report.add(empirical_mean_check(g, q, law));
  if (!g.has_window()) return;
  report.add(w1_bound_check(g, q, law));
  report.add(w2_bound_check(g, q, law));
  report.add(tail_bound_check(g, q, law));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  return file;
}

/// `trace.csv` for one run, `trace_<i>.csv` for several.
std::string indexed_path(const std::string& path, std::size_t i, std::size_t count) {
  if (count <= 1) return path;
  const std::filesystem::path p(path);
  auto name = p.stem().string() + "_" + std::to_string(i) + p.extension().string();
  return (p.parent_path() / name).string();
}

}  // namespace

std::vector<std::string> default_groups() {
  return {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "I2(3)", "I2(4)", "I2(5)", "I2(6)"};
}

std::vector<double> default_q_grid() { return {0.25, 0.5, 1.0, 2.0, 4.0}; }

Report cmd_verify(const ExperimentConfig& config) {
  Report report("verify");
  const auto tol = config.tolerances();
  const auto qs = config.q.empty() ? default_q_grid() : config.q;
  std::vector<Factor> factors;
  for (const auto& text : groups_or(config, default_groups())) factors.push_back(single_factor(text));
  for (const auto& g : factors) {
    if (g.has_window()) report.add(coupling_boundedness_check(g));
    for (double q : qs) {
      if (config.mode == Mode::exact) {
        exact_checks(report, g, q, tol);
      } else {
        monte_carlo_checks(report, g, q, mc_options(config));
      }
    }
  }
  return report;
}

Report cmd_clt(const ExperimentConfig& config) {
  Report report("clt");
  const auto groups = groups_or(config, {"B200"});
  const auto qs = config.q.empty() ? std::vector<double>{1.0} : config.q;
  auto runs = nlohmann::json::array();
  std::vector<CltSummary> summaries;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto spec = MallowsSpec::make(parse_group(groups[i]), qs);
    auto summary = clt_summary(spec, mc_options(config));
    nlohmann::json run{
        {"group", spec.group.to_string()}, {"q", spec.q},
        {"mean", summary.mean},            {"sd", summary.sd},
        {"variance", summary.sd * summary.sd},
        {"w1", summary.w1},                {"w2", summary.w2},
        {"w2_batch_se", summary.w2_batch_se}, {"batches", summary.batches},
        {"histogram", law_to_json(summary.law)},
    };
    if (spec.group.irreducible() && spec.factor().has_window()) {
      const auto& g = spec.factor();
      report.add(w1_bound_check(g, spec.q.front(), summary.law));
      report.add(w2_bound_check(g, spec.q.front(), summary.law));
    }
    try {
      const auto exact = exact_distribution(spec);
      if (exact.variance() > 0.0) {
        const double w2_exact = wasserstein_p_to_normal(NormalizedStatistic::standardize(exact), 2);
        run["w2_exact"] = w2_exact;
        // Bounded variance means no normal limit; the floor is half the exact distance.
        report.add(Check::at_least("W2 stays above exact floor [" + spec.to_string() + "]", summary.w2, 0.5 * w2_exact)
                       .informational("report only"));
      }
    } catch (const std::length_error&) {
      // Too large to enumerate; only the sampled view is reported.
    }
    if (!config.trace.empty()) {
      auto file = open_output(indexed_path(config.trace, i, groups.size()));
      write_quantile_trace(file, NormalizedStatistic::standardize(summary.law), 199);
    }
    runs.push_back(std::move(run));
    summaries.push_back(std::move(summary));
  }
  for (std::size_t i = 1; i < summaries.size(); ++i) {
    const auto& a = summaries[i - 1];
    const auto& b = summaries[i];
    const double slack = 2.0 * std::hypot(a.w2_batch_se, b.w2_batch_se);
    report.add(Check::at_most("W2 trend " + groups[i - 1] + " -> " + groups[i], b.w2, a.w2 + slack)
                   .informational("trend report"));
  }
  report.results()["runs"] = std::move(runs);
  return report;
}

Report cmd_sample(const ExperimentConfig& config, std::ostream& out) {
  Report report("sample");
  const auto groups = groups_or(config, {"B4"});
  if (groups.size() != 1) throw std::invalid_argument("sample takes exactly one group");
  const auto spec = MallowsSpec::make(parse_group(groups.front()), config.q.empty() ? std::vector<double>{1.0} : config.q);
  const MallowsSampler sampler(spec);
  const auto chunks = run_chunked(config.samples, config.threads,
                                  [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
                                    auto rng = Rng::derive(config.seed, chunk);
                                    std::string text;
                                    for (auto k = begin; k < end; ++k) {
                                      text += to_string(sampler(rng));
                                      text += '\n';
                                    }
                                    return text;
                                  });
  for (const auto& text : chunks) out << text;
  report.results()["group"] = spec.group.to_string();
  report.results()["count"] = config.samples;
  return report;
}

Report cmd_exact_dist(const ExperimentConfig& config, std::ostream& out) {
  Report report("exact-dist");
  const auto groups = groups_or(config, {"B3"});
  if (groups.size() != 1) throw std::invalid_argument("exact-dist takes exactly one group");
  const auto spec = MallowsSpec::make(parse_group(groups.front()), config.q.empty() ? std::vector<double>{1.0} : config.q);
  const auto statistic = parse_statistic(config.statistic);
  const auto law = exact_distribution(spec, statistic);
  write_csv(out, law);
  double total = 0.0;
  for (double p : law.mass()) total += p;
  report.add(Check::at_most("pmf sums to 1 [" + spec.to_string() + "]", std::abs(total - 1.0),
                            config.tolerances().probability));
  report.results() = {{"group", spec.group.to_string()}, {"statistic", config.statistic},
                      {"support_size", law.size()},     {"mean", law.mean()},
                      {"variance", law.variance()}};
  return report;
}

Report cmd_moments(const ExperimentConfig& config, std::ostream& out) {
  Report report("moments");
  const auto tol = config.tolerances();
  const auto qs = config.q.empty() ? default_q_grid() : config.q;
  const bool exact = config.mode == Mode::exact;
  out << "group,q,mode,mean_formula,mean_measured,variance_lower,variance_measured,variance_upper,"
         "des_cube_bound,des_cube_measured\n";
  for (const auto& text : groups_or(config, default_groups())) {
    const auto g = single_factor(text);
    for (double q : qs) {
      const auto spec = MallowsSpec::make(g, q);
      const auto t = exact ? exact_distribution(g, q) : empirical_distribution(spec, Statistic::two_sided, mc_options(config));
      const auto s = summarize(t);
      out << g.to_string() << ',' << format_number(q) << ',' << mode_name(config.mode) << ','
          << format_number(mean_two_sided(g, q)) << ',' << format_number(s.mean) << ',';
      if (g.has_window()) {
        const auto bounds = variance_bounds_two_sided(g, q);
        const auto des = exact ? exact_distribution(g, q, Statistic::descents)
                               : empirical_distribution(spec, Statistic::descents, mc_options(config));
        out << format_number(bounds.lower) << ',' << format_number(s.variance) << ',' << format_number(bounds.upper)
            << ',' << format_number(cube_moment_bound(g, q)) << ',' << format_number(des.raw_moment(3)) << '\n';
      } else {
        out << ',' << format_number(s.variance) << ",,,\n";
      }
      if (exact) {
        report.add(mean_check(g, q, tol));
        if (g.has_window()) report.add(variance_bounds_check(g, q));
      } else {
        report.add(empirical_mean_check(g, q, t));
      }
    }
  }
  return report;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<Report> report;
  try {
    const bool artifact = config.command == "sample" || config.command == "exact-dist" || config.command == "moments";
    std::ofstream file;
    if (artifact && !config.out.empty()) file = open_output(config.out);
    std::ostream& sink = file.is_open() ? static_cast<std::ostream&>(file) : out;
    if (config.command == "verify") {
      report = cmd_verify(config);
    } else if (config.command == "clt") {
      report = cmd_clt(config);
    } else if (config.command == "sample") {
      report = cmd_sample(config, sink);
    } else if (config.command == "exact-dist") {
      report = cmd_exact_dist(config, sink);
    } else if (config.command == "moments") {
      report = cmd_moments(config, sink);
    } else {
      throw std::invalid_argument("unknown command: " + config.command);
    }
    sink.flush();
    if (!sink) throw std::runtime_error("write failed");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  report->config() = config.to_json();
  report->set_wall_clock(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

  const bool artifact_on_stdout = config.command != "verify" && config.command != "clt" && config.out.empty();
  std::ostream& log = artifact_on_stdout ? err : out;
  for (const auto& c : report->checks()) {
    if (config.verbose || c.status() == "FAIL") log << c.line() << '\n';
  }
  if (const auto& results = report->results(); results.contains("runs")) {
    for (const auto& r : results["runs"]) {
      log << r["group"].get<std::string>() << "  mean=" << format_number(r["mean"].get<double>())
          << "  sd=" << format_number(r["sd"].get<double>()) << "  W1=" << format_number(r["w1"].get<double>())
          << "  W2=" << format_number(r["w2"].get<double>()) << " +- "
          << format_number(r["w2_batch_se"].get<double>()) << '\n';
    }
  }
  log << report->checks().size() << " checks, " << report->failures() << " failed\n";

  const std::string report_path =
      (config.command == "verify" || config.command == "clt") ? config.out : config.report;
  if (!report_path.empty()) {
    std::ofstream file(report_path, std::ios::binary);
    file << report->to_json().dump(2) << '\n';
    if (!file) {
      err << "error: cannot write report to " << report_path << '\n';
      return kExitUsage;
    }
  }
  return report->passed() ? kExitPass : kExitFail;
}

}  // namespace coxmal::cli

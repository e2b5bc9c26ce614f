#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "experiment.hpp"

int main(int argc, char** argv) {
  using namespace coxmal::cli;

  CLI::App app{"Mallows measures on finite Coxeter groups: exact oracles, samplers and bound checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("coxmal ") + COXMAL_VERSION);

  ExperimentConfig flags;
  std::string q_text;
  std::string mode_text = "exact";
  std::string config_path;

  std::vector<CLI::App*> commands;
  std::vector<CLI::Option*> options;
  for (const auto& [name, about] : std::initializer_list<std::pair<const char*, const char*>>{
           {"verify", "run the verification suite over a grid of groups and q"},
           {"clt", "sample (product) groups and report distances to the normal"},
           {"sample", "write sampled elements, one per line"},
           {"exact-dist", "write the exact law of a statistic as CSV"},
           {"moments", "tabulate closed-form against measured moments as CSV"}}) {
    auto* cmd = app.add_subcommand(name, about);
    commands.push_back(cmd);
    auto add = [&](CLI::Option* o) { options.push_back(o); return o; };
    add(cmd->add_option("--group,-g", flags.groups, "group such as B4, I2(5) or \"B50 x A49\"; repeatable")
            ->expected(1)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll));
    add(cmd->add_option("--q", q_text, "q value or list, e.g. 0.5 or 0.5,1"));
    add(cmd->add_option("--seed", flags.seed, "random seed"));
    add(cmd->add_option("--samples", flags.samples, "Monte Carlo sample count"));
    add(cmd->add_option("--mode", mode_text, "exact or mc")->check(CLI::IsMember({"exact", "mc"})));
    add(cmd->add_option("--out,-o", flags.out, "output path"));
    add(cmd->add_option("--report", flags.report, "JSON report path (sample, exact-dist, moments)"));
    add(cmd->add_option("--trace", flags.trace, "quantile trace CSV (clt)"));
    add(cmd->add_option("--threads", flags.threads, "worker cap, 0 = all cores"));
    add(cmd->add_option("--tolerance", flags.tolerance, "override every exact-comparison tolerance"));
    add(cmd->add_option("--statistic", flags.statistic, "t, des or length")
            ->check(CLI::IsMember({"t", "des", "length"})));
    add(cmd->add_flag("--verbose,-v", flags.verbose, "print every check"));
    cmd->add_option("--config", config_path, "key = value config file with [command] sections");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  ExperimentConfig config;
  for (auto* cmd : commands) {
    if (cmd->parsed()) config.command = cmd->get_name();
  }
  try {
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw std::invalid_argument("cannot read config " + config_path);
      apply_config(parse_config(file), config);
    }
    // Flags given on the command line win over the config file.
    auto given = [&](std::string_view long_name) {
      for (auto* o : options) {
        if (o->get_name() == long_name && o->count() > 0) return true;
      }
      return false;
    };
    if (given("--group")) config.groups = flags.groups;
    if (given("--q")) config.q = parse_q_list(q_text);
    if (given("--seed")) config.seed = flags.seed;
    if (given("--samples")) config.samples = flags.samples;
    if (given("--mode")) config.mode = coxmal::parse_mode(mode_text);
    if (given("--out")) config.out = flags.out;
    if (given("--report")) config.report = flags.report;
    if (given("--trace")) config.trace = flags.trace;
    if (given("--threads")) config.threads = flags.threads;
    if (given("--tolerance")) config.tolerance = flags.tolerance;
    if (given("--statistic")) config.statistic = flags.statistic;
    if (given("--verbose")) config.verbose = flags.verbose;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(config, std::cout, std::cerr);
}

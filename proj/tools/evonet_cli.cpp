//! Command-line front end: runs one experiment command per invocation and
//! writes plot-ready CSV/JSON tables.  Runs are reproducible from the config
//! alone; a JSON config file supplies defaults and explicit flags override it.
//!
//! Exit codes: 0 success, 1 parameter/domain/parse error, 2 I/O error,
//! 3 model-degeneracy error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "evonet/commands.hpp"
#include "evonet/errors.hpp"
#include "evonet/version.hpp"

namespace {

using evonet::ExperimentConfig;

//! CLI-side mirror of ExperimentConfig: values plus the option handles that
//! tell us which flags were actually given on the command line.
struct CliOptions {
  std::string config_path;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint64_t seed = 0;
  std::uint32_t seeds = 0;
  std::uint64_t trials = 0;
  double shd_ms = 0.0;
  std::string model;
  double lambda_mine = 0.0;
  double threshold = 0.0;
  double speed = 0.0;
  double difficulty = 0.0;
  double profit = 0.0;
  double cost = 0.0;
  std::vector<double> profit_grid;
  std::vector<std::uint32_t> n_values;
  std::vector<std::uint32_t> m_values;
  std::string input;
  std::string out;
  std::string format;

  CLI::Option* opt_n = nullptr;
  CLI::Option* opt_m = nullptr;
  CLI::Option* opt_seed = nullptr;
  CLI::Option* opt_seeds = nullptr;
  CLI::Option* opt_trials = nullptr;
  CLI::Option* opt_shd = nullptr;
  CLI::Option* opt_model = nullptr;
  CLI::Option* opt_lambda = nullptr;
  CLI::Option* opt_threshold = nullptr;
  CLI::Option* opt_speed = nullptr;
  CLI::Option* opt_difficulty = nullptr;
  CLI::Option* opt_profit = nullptr;
  CLI::Option* opt_cost = nullptr;
  CLI::Option* opt_profit_grid = nullptr;
  CLI::Option* opt_n_values = nullptr;
  CLI::Option* opt_m_values = nullptr;
  CLI::Option* opt_input = nullptr;
  CLI::Option* opt_out = nullptr;
  CLI::Option* opt_format = nullptr;
};

void add_common_options(CLI::App* sub, CliOptions& opts) {
  sub->add_option("--config", opts.config_path, "JSON config file (flags override it)");
  opts.opt_n = sub->add_option("--n", opts.n, "network size");
  opts.opt_m = sub->add_option("--m", opts.m, "outgoing links per joiner (default 8)");
  opts.opt_seed = sub->add_option("--seed", opts.seed, "master seed");
  opts.opt_seeds = sub->add_option("--seeds", opts.seeds, "independent graph seeds");
  opts.opt_shd = sub->add_option("--shd-ms", opts.shd_ms, "single-hop delay in ms (default 2000)");
  opts.opt_model = sub->add_option(
      "--model", opts.model, "topology: evol-fixed-m | evol-bernoulli | scale-free | random");
  opts.opt_out = sub->add_option("--out", opts.out, "output directory");
  opts.opt_format = sub->add_option("--format", opts.format, "output format: csv | json");
}

//! Layer the config sources: defaults, then the JSON file, then flags.
ExperimentConfig resolve_config(const std::string& command, const CliOptions& opts) {
  ExperimentConfig config;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path, std::ios::binary);
    if (!in) {
      throw evonet::IoError("cannot open config '" + opts.config_path + "' for reading");
    }
    std::ostringstream text;
    text << in.rdbuf();
    config = evonet::config_from_json(text.str());
  }
  config.command = command;
  if (*opts.opt_n) config.n = opts.n;
  if (*opts.opt_m) config.m = opts.m;
  if (*opts.opt_seed) config.seed = opts.seed;
  if (*opts.opt_seeds) config.seeds = opts.seeds;
  if (opts.opt_trials && *opts.opt_trials) config.trials = opts.trials;
  if (*opts.opt_shd) config.shd_ms = opts.shd_ms;
  if (*opts.opt_model) config.model = evonet::model_from_token(opts.model);
  if (opts.opt_lambda && *opts.opt_lambda) config.lambda_mine = opts.lambda_mine;
  if (opts.opt_threshold && *opts.opt_threshold) config.threshold = opts.threshold;
  if (opts.opt_speed && *opts.opt_speed) config.computational_speed = opts.speed;
  if (opts.opt_difficulty && *opts.opt_difficulty) config.difficulty = opts.difficulty;
  if (opts.opt_profit && *opts.opt_profit) config.profit_mining = opts.profit;
  if (opts.opt_cost && *opts.opt_cost) config.cost_constant = opts.cost;
  if (opts.opt_profit_grid && *opts.opt_profit_grid) config.profit_grid = opts.profit_grid;
  if (opts.opt_n_values && *opts.opt_n_values) config.n_values = opts.n_values;
  if (opts.opt_m_values && *opts.opt_m_values) config.m_values = opts.m_values;
  if (opts.opt_input && *opts.opt_input) config.input_path = opts.input;
  if (*opts.opt_out) config.out_dir = opts.out;
  if (*opts.opt_format) config.format = evonet::format_from_token(opts.format);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evonet: evolutionary-random-graph overlay network toolkit"};
  app.set_version_flag("--version", evonet::version_string);
  app.require_subcommand(1);

  CliOptions degree, sweep, propagate, fork_opts, calibrate, equilibrium, ingest;

  CLI::App* sub_degree = app.add_subcommand(
      "degree-dist", "empirical in-degree histogram vs. model pmf and power-law fit");
  add_common_options(sub_degree, degree);

  CLI::App* sub_sweep = app.add_subcommand(
      "diameter-sweep", "measured diameter against analytic predictions over n and m");
  add_common_options(sub_sweep, sweep);
  sweep.opt_n_values =
      sub_sweep->add_option("--n-values", sweep.n_values, "network sizes to sweep");
  sweep.opt_m_values =
      sub_sweep->add_option("--m-values", sweep.m_values, "link counts to sweep");

  CLI::App* sub_prop = app.add_subcommand(
      "propagate", "block propagation traces and convergence envelopes");
  add_common_options(sub_prop, propagate);

  CLI::App* sub_fork = app.add_subcommand(
      "fork", "forking probability bounds with Monte Carlo validation");
  add_common_options(sub_fork, fork_opts);
  fork_opts.opt_trials =
      sub_fork->add_option("--trials", fork_opts.trials, "Monte Carlo trials per row");
  fork_opts.opt_lambda =
      sub_fork->add_option("--lambda-mine", fork_opts.lambda_mine, "block rate per ms");
  fork_opts.opt_threshold =
      sub_fork->add_option("--threshold", fork_opts.threshold, "fork probability cap");
  fork_opts.opt_speed =
      sub_fork->add_option("--speed", fork_opts.speed, "computational speed");
  fork_opts.opt_difficulty = sub_fork->add_option(
      "--difficulty", fork_opts.difficulty, "mining difficulty (derives the rate)");

  CLI::App* sub_cal = app.add_subcommand(
      "calibrate", "minimum difficulty keeping the fork bound at the threshold");
  add_common_options(sub_cal, calibrate);
  calibrate.opt_threshold =
      sub_cal->add_option("--threshold", calibrate.threshold, "fork probability cap");
  calibrate.opt_speed =
      sub_cal->add_option("--speed", calibrate.speed, "computational speed");

  CLI::App* sub_eq = app.add_subcommand(
      "equilibrium", "equilibrium network size over a mining-profit grid");
  add_common_options(sub_eq, equilibrium);
  equilibrium.opt_profit =
      sub_eq->add_option("--profit", equilibrium.profit, "profit per mined block");
  equilibrium.opt_cost =
      sub_eq->add_option("--cost", equilibrium.cost, "mining cost constant");
  equilibrium.opt_threshold =
      sub_eq->add_option("--threshold", equilibrium.threshold, "fork probability cap");
  equilibrium.opt_speed =
      sub_eq->add_option("--speed", equilibrium.speed, "computational speed");
  equilibrium.opt_profit_grid =
      sub_eq->add_option("--profit-grid", equilibrium.profit_grid, "profit values to sweep");

  CLI::App* sub_ingest = app.add_subcommand(
      "ingest", "parse arrival logs, estimate the hop delay, compare to the model");
  add_common_options(sub_ingest, ingest);
  ingest.opt_input =
      sub_ingest->add_option("--input", ingest.input, "arrival-log CSV to ingest");

  try {
    app.parse(argc, argv);

    CliOptions* chosen = nullptr;
    std::string command;
    if (sub_degree->parsed()) chosen = &degree, command = "degree-dist";
    else if (sub_sweep->parsed()) chosen = &sweep, command = "diameter-sweep";
    else if (sub_prop->parsed()) chosen = &propagate, command = "propagate";
    else if (sub_fork->parsed()) chosen = &fork_opts, command = "fork";
    else if (sub_cal->parsed()) chosen = &calibrate, command = "calibrate";
    else if (sub_eq->parsed()) chosen = &equilibrium, command = "equilibrium";
    else chosen = &ingest, command = "ingest";

    ExperimentConfig config = resolve_config(command, *chosen);
    evonet::CommandResult result = evonet::run_command(config);
    for (const auto& path : result.files) {
      std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const evonet::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const evonet::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const evonet::ConnectivityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const evonet::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

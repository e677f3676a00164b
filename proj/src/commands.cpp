#include "evonet/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "evonet/analytic.hpp"
#include "evonet/equilibrium.hpp"
#include "evonet/errors.hpp"
#include "evonet/forking.hpp"
#include "evonet/ingest.hpp"
#include "evonet/propagation.hpp"
#include "evonet/rng.hpp"
#include "evonet/version.hpp"

namespace evonet {

namespace {

using nlohmann::json;

//! Shortest stable decimal form used for every real number we emit.
std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

//! Quote a CSV cell only when it needs it.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string cell_to_csv(const json& cell) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return csv_escape(cell.get<std::string>());
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_number_float()) return fmt_num(cell.get<double>());
  return cell.dump();
}

//! One emitted table: column names, rows of cells (null = empty cell) and
//! scalar summary entries that become comment lines (CSV) or a summary
//! object (JSON).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<std::pair<std::string, json>> summary;

  void add_summary(std::string key, json value) {
    summary.emplace_back(std::move(key), std::move(value));
  }
};

//! Header text carried by every file (comment syntax is format specific).
std::string echo_text(const ExperimentConfig& config) {
  return std::string("evonet ") + version_string + " | " + config.command +
         " | " + config_to_json(config);
}

std::filesystem::path output_path(const ExperimentConfig& config, const std::string& stem,
                                  const char* extension) {
  return std::filesystem::path(config.out_dir) / (stem + std::string(extension));
}

void ensure_out_dir(const ExperimentConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + config.out_dir +
                  "': " + ec.message());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.good()) throw IoError("failed writing '" + path.string() + "'");
}

//! Emit a table as `<out>/<stem>.csv` or `.json` per the config format.
std::filesystem::path emit_table(const ExperimentConfig& config, const std::string& stem,
                                 const Table& table) {
  if (config.format == OutputFormat::Csv) {
    std::string text = "# " + echo_text(config) + "\n";
    for (const auto& [key, value] : table.summary) {
      text += "# " + key + "=" + cell_to_csv(value) + "\n";
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) text += ',';
      text += csv_escape(table.columns[i]);
    }
    text += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text += ',';
        text += cell_to_csv(row[i]);
      }
      text += '\n';
    }
    auto path = output_path(config, stem, ".csv");
    write_text_file(path, text);
    return path;
  }

  json doc;
  doc["header"] = echo_text(config);
  if (!table.summary.empty()) {
    json summary = json::object();
    for (const auto& [key, value] : table.summary) summary[key] = value;
    doc["summary"] = summary;
  }
  doc["columns"] = table.columns;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i].is_null()) obj[table.columns[i]] = row[i];
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  auto path = output_path(config, stem, ".json");
  write_text_file(path, doc.dump(2) + "\n");
  return path;
}

//! Build the configured topology. The uniform model matches the default
//! model's link density (mean degree 2m).
Graph generate_graph(const ExperimentConfig& config, std::uint64_t seed) {
  switch (config.model) {
    case GraphModel::Random: {
      double p = config.n > 1
                     ? std::min(1.0, 2.0 * config.m / static_cast<double>(config.n - 1))
                     : 0.0;
      return gen_random(config.n, p, seed);
    }
    case GraphModel::ScaleFree:
      return gen_scale_free(config.n, config.m, seed);
    case GraphModel::EvolutionaryFixedM:
      return gen_evolutionary_random(config.n, config.m, seed, EvolutionaryVariant::FixedM);
    case GraphModel::EvolutionaryBernoulli:
      return gen_evolutionary_random(config.n, config.m, seed,
                                     EvolutionaryVariant::Bernoulli);
    case GraphModel::Custom:
      break;
  }
  throw ParameterError("model 'custom' is reserved for loaded edge lists");
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ParameterError(std::string(name) + " must be finite");
  }
}

ModelParams model_params(const ExperimentConfig& config) {
  ModelParams params;
  params.n = config.n;
  params.m = config.m;
  return params;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n < 1) throw ParameterError("n must be at least 1");
  if (m < 1) throw ParameterError("m must be at least 1");
  if (seeds < 1) throw ParameterError("seeds must be at least 1");
  if (trials < 1) throw ParameterError("trials must be at least 1");
  require_finite(shd_ms, "shd_ms");
  if (shd_ms <= 0) throw ParameterError("shd_ms must be positive");
  require_finite(lambda_mine, "lambda_mine");
  if (lambda_mine < 0) throw ParameterError("lambda_mine must be non-negative");
  require_finite(threshold, "threshold");
  if (threshold <= 0 || threshold >= 1) {
    throw ParameterError("threshold must be strictly between 0 and 1");
  }
  require_finite(computational_speed, "computational_speed");
  if (computational_speed <= 0) {
    throw ParameterError("computational_speed must be positive");
  }
  require_finite(difficulty, "difficulty");
  if (difficulty < 0) throw ParameterError("difficulty must be non-negative");
  require_finite(profit_mining, "profit_mining");
  if (profit_mining < 0) throw ParameterError("profit_mining must be non-negative");
  require_finite(cost_constant, "cost_constant");
  if (cost_constant <= 0) throw ParameterError("cost_constant must be positive");
  for (double p : profit_grid) {
    require_finite(p, "profit_grid entry");
    if (p < 0) throw ParameterError("profit_grid entries must be non-negative");
  }
  for (std::uint32_t v : n_values) {
    if (v < 1) throw ParameterError("n_values entries must be at least 1");
  }
  for (std::uint32_t v : m_values) {
    if (v < 1) throw ParameterError("m_values entries must be at least 1");
  }
  if (out_dir.empty()) throw ParameterError("output directory must not be empty");
}

OutputFormat format_from_token(const std::string& token) {
  if (token == "csv") return OutputFormat::Csv;
  if (token == "json") return OutputFormat::Json;
  throw ParameterError("unknown output format '" + token + "' (expected csv or json)");
}

const char* to_token(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

std::string config_to_json(const ExperimentConfig& config) {
  json doc;
  doc["command"] = config.command;
  doc["computational_speed"] = config.computational_speed;
  doc["cost_constant"] = config.cost_constant;
  doc["difficulty"] = config.difficulty;
  doc["format"] = to_token(config.format);
  doc["input"] = config.input_path;
  doc["lambda_mine"] = config.lambda_mine;
  doc["m"] = config.m;
  doc["m_values"] = config.m_values;
  doc["model"] = to_token(config.model);
  doc["n"] = config.n;
  doc["n_values"] = config.n_values;
  doc["out"] = config.out_dir;
  doc["profit_grid"] = config.profit_grid;
  doc["profit_mining"] = config.profit_mining;
  doc["seed"] = config.seed;
  doc["seeds"] = config.seeds;
  doc["shd_ms"] = config.shd_ms;
  doc["threshold"] = config.threshold;
  doc["trials"] = config.trials;
  return doc.dump();
}

namespace {

template <typename T>
T get_number(const json& value, const char* key) {
  if constexpr (std::is_floating_point_v<T>) {
    if (!value.is_number()) {
      throw ParseError(std::string("config key '") + key + "' must be a number");
    }
  } else {
    if (!value.is_number_integer() && !value.is_number_unsigned()) {
      throw ParseError(std::string("config key '") + key + "' must be an integer");
    }
    if (value.is_number_integer() && value.get<std::int64_t>() < 0) {
      throw ParseError(std::string("config key '") + key + "' must be non-negative");
    }
  }
  return value.get<T>();
}

std::string get_string(const json& value, const char* key) {
  if (!value.is_string()) {
    throw ParseError(std::string("config key '") + key + "' must be a string");
  }
  return value.get<std::string>();
}

template <typename T>
std::vector<T> get_array(const json& value, const char* key) {
  if (!value.is_array()) {
    throw ParseError(std::string("config key '") + key + "' must be an array");
  }
  std::vector<T> out;
  out.reserve(value.size());
  for (const auto& item : value) out.push_back(get_number<T>(item, key));
  return out;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");

  ExperimentConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") config.command = get_string(value, "command");
    else if (key == "n") config.n = get_number<std::uint32_t>(value, "n");
    else if (key == "m") config.m = get_number<std::uint32_t>(value, "m");
    else if (key == "seed") config.seed = get_number<std::uint64_t>(value, "seed");
    else if (key == "seeds") config.seeds = get_number<std::uint32_t>(value, "seeds");
    else if (key == "trials") config.trials = get_number<std::uint64_t>(value, "trials");
    else if (key == "shd_ms") config.shd_ms = get_number<double>(value, "shd_ms");
    else if (key == "model") config.model = model_from_token(get_string(value, "model"));
    else if (key == "lambda_mine") config.lambda_mine = get_number<double>(value, "lambda_mine");
    else if (key == "threshold") config.threshold = get_number<double>(value, "threshold");
    else if (key == "computational_speed")
      config.computational_speed = get_number<double>(value, "computational_speed");
    else if (key == "difficulty") config.difficulty = get_number<double>(value, "difficulty");
    else if (key == "profit_mining")
      config.profit_mining = get_number<double>(value, "profit_mining");
    else if (key == "cost_constant")
      config.cost_constant = get_number<double>(value, "cost_constant");
    else if (key == "profit_grid") config.profit_grid = get_array<double>(value, "profit_grid");
    else if (key == "n_values")
      config.n_values = get_array<std::uint32_t>(value, "n_values");
    else if (key == "m_values")
      config.m_values = get_array<std::uint32_t>(value, "m_values");
    else if (key == "input") config.input_path = get_string(value, "input");
    else if (key == "out") config.out_dir = get_string(value, "out");
    else if (key == "format") config.format = format_from_token(get_string(value, "format"));
    else throw ParseError("unknown config key '" + key + "'");
  }
  return config;
}

std::string config_echo_line(const ExperimentConfig& config) {
  return "# " + echo_text(config);
}

// ---------------------------------------------------------------------------
// degree-dist
// ---------------------------------------------------------------------------

CommandResult cmd_degree_dist(const ExperimentConfig& base) {
  ExperimentConfig config = base;
  config.command = "degree-dist";
  config.validate();
  ensure_out_dir(config);

  DegreeHistogram hist;
  for (std::uint32_t s = 0; s < config.seeds; ++s) {
    hist += in_degree_histogram(generate_graph(config, config.seed + s));
  }

  // The model pmf needs n > 2m; below that (complete-graph regime) the
  // model cells stay empty and only the empirical and power-law columns fill.
  bool has_model = false;
  DegreePmf pmf;
  double tv = 0.0;
  double ll_model = 0.0;
  try {
    pmf = degree_pmf(model_params(config));
    tv = total_variation(hist, pmf);
    ll_model = restricted_log_likelihood(hist, pmf);
    has_model = true;
  } catch (const DomainError&) {
  } catch (const ModelError&) {
  }
  PowerLawFit plaw = fit_power_law(hist);

  // Power-law pmf over the fitted support, scaled by the observed k >= 1
  // mass so the three columns overlay on one plot.
  std::uint32_t k_sup = hist.max_k();
  double z = 0.0;
  for (std::uint32_t k = 1; k <= k_sup; ++k) z += std::pow(k, -plaw.alpha);
  double tail_mass = 1.0 - hist.fraction(0);

  // Emit out to the last k the data or the model meaningfully reaches.
  std::uint32_t k_hi = k_sup;
  if (has_model) {
    double cumulative = 0.0;
    for (std::uint32_t k = 0; k < pmf.probabilities.size(); ++k) {
      cumulative += pmf.probabilities[k];
      if (cumulative >= 1.0 - 1e-9) {
        k_hi = std::max(k_hi, k);
        break;
      }
    }
  }

  Table table;
  table.columns = {"k", "empirical", "model", "powerlaw"};
  table.add_summary("nodes", hist.total);
  table.add_summary("tv_distance", has_model ? json(tv) : json());
  table.add_summary("loglik_model", has_model ? json(ll_model) : json());
  table.add_summary("loglik_powerlaw", plaw.log_likelihood);
  table.add_summary("powerlaw_alpha", plaw.alpha);
  for (std::uint32_t k = 0; k <= k_hi; ++k) {
    json model;
    if (has_model) model = k < pmf.probabilities.size() ? pmf.probabilities[k] : 0.0;
    double powerlaw =
        (k >= 1 && k <= k_sup && z > 0) ? tail_mass * std::pow(k, -plaw.alpha) / z : 0.0;
    table.rows.push_back({k, hist.fraction(k), model, powerlaw});
  }

  CommandResult result;
  result.files.push_back(emit_table(config, "degree_dist", table));
  return result;
}

// ---------------------------------------------------------------------------
// diameter-sweep
// ---------------------------------------------------------------------------

CommandResult cmd_diameter_sweep(const ExperimentConfig& base) {
  ExperimentConfig config = base;
  config.command = "diameter-sweep";
  config.validate();
  ensure_out_dir(config);

  std::vector<std::uint32_t> n_values =
      config.n_values.empty() ? std::vector<std::uint32_t>{config.n} : config.n_values;
  std::vector<std::uint32_t> m_values =
      config.m_values.empty() ? std::vector<std::uint32_t>{config.m} : config.m_values;

  Table table;
  table.columns = {"n",     "m",          "seeds",        "measured_mean",
                   "exact", "model",      "simplified",   "simplified_m"};
  for (std::uint32_t n : n_values) {
    for (std::uint32_t m : m_values) {
      double sum = 0.0;
      bool exact = true;
      for (std::uint32_t s = 0; s < config.seeds; ++s) {
        ExperimentConfig cell = config;
        cell.n = n;
        cell.m = m;
        DiameterResult dr = diameter(generate_graph(cell, config.seed + s));
        sum += dr.hops;
        exact = exact && dr.exact;
      }
      double mean = sum / config.seeds;

      json model;
      try {
        ModelParams params;
        params.n = n;
        params.m = m;
        model = diameter_analytic(params);
      } catch (const DomainError&) {
      } catch (const ModelError&) {
      }
      table.rows.push_back({n, m, config.seeds, mean, exact, model,
                            diameter_simplified(n), diameter_simplified_m(n, m)});
    }
  }

  CommandResult result;
  result.files.push_back(emit_table(config, "diameter_sweep", table));
  return result;
}

// ---------------------------------------------------------------------------
// propagate
// ---------------------------------------------------------------------------

namespace {

Table trace_table(const PropagationTrace& trace, std::uint32_t eccentricity) {
  Table table;
  table.columns = {"node", "hop", "arrival_ms"};
  table.add_summary("source", trace.source);
  table.add_summary("source_eccentricity", eccentricity);
  for (node_t v = 0; v < trace.hops.size(); ++v) {
    table.rows.push_back({v, trace.hops[v], trace.arrival_ms(v)});
  }
  return table;
}

Table cumulative_table(const PropagationTrace& trace) {
  Table table;
  table.columns = {"time_ms", "nodes_reached"};
  for (const CumulativePoint& point : cumulative_arrivals(trace)) {
    table.rows.push_back({point.time_ms, point.nodes_reached});
  }
  return table;
}

}  // namespace

CommandResult cmd_propagate(const ExperimentConfig& base) {
  ExperimentConfig config = base;
  config.command = "propagate";
  config.validate();
  ensure_out_dir(config);

  Graph g = generate_graph(config, config.seed);
  EccentricityExtremes extremes = eccentricity_extremes(g);
  Rng rng = Rng::stream(config.seed, 2);
  node_t random_source = static_cast<node_t>(rng.below(g.size()));

  struct Run {
    const char* label;
    node_t source;
    std::uint32_t ecc;
  };
  std::uint32_t random_ecc = eccentricity(g, random_source);
  const Run runs[] = {{"max", extremes.peripheral, extremes.diameter},
                      {"min", extremes.central, extremes.radius},
                      {"random", random_source, random_ecc}};

  CommandResult result;
  for (const Run& run : runs) {
    PropagationTrace trace = simulate_propagation(g, run.source, config.shd_ms);
    result.files.push_back(
        emit_table(config, std::string("trace_") + run.label, trace_table(trace, run.ecc)));
    result.files.push_back(emit_table(config, std::string("cumulative_") + run.label,
                                      cumulative_table(trace)));
  }

  // Convergence envelopes at the full network size; cells stay empty where
  // the model is out of domain (subcritical branching or n_reached <= 2m).
  Table envelopes;
  envelopes.columns = {"n_reached", "radius_ms", "diameter_ms"};
  BranchingFactor psi = branching_factor(model_params(config));
  bool supercritical = psi.value > 1.0;
  envelopes.add_summary("psi", psi.value);
  for (std::uint64_t c = 1; c <= g.size(); ++c) {
    json radius_cell, diameter_cell;
    if (supercritical) {
      radius_cell = convergence_radius_at(c, psi.value, config.shd_ms);
      if (c > 2ull * config.m) {
        diameter_cell = convergence_diameter_at(c, config.m, psi.value, config.shd_ms);
      }
    }
    envelopes.rows.push_back({c, radius_cell, diameter_cell});
  }
  result.files.push_back(emit_table(config, "envelopes", envelopes));
  return result;
}

// ---------------------------------------------------------------------------
// fork
// ---------------------------------------------------------------------------

CommandResult cmd_fork(const ExperimentConfig& base) {
  ExperimentConfig config = base;
  config.command = "fork";
  config.validate();
  ensure_out_dir(config);

  std::vector<double> lambdas;
  if (config.difficulty > 0) {
    lambdas.push_back(mining_rate(config.computational_speed, config.difficulty));
  } else if (config.lambda_mine > 0) {
    lambdas.push_back(config.lambda_mine);
  } else {
    for (double x : {1e-5, 1e-4, 1e-3, 1e-2}) lambdas.push_back(x / config.shd_ms);
  }

  Graph g = generate_graph(config, config.seed);

  Table table;
  table.columns = {"lambda_mine", "shd_ms", "lower", "upper",
                   "mc_estimate", "mc_se",  "trials"};
  for (double lambda : lambdas) {
    ForkParams fp;
    fp.params = model_params(config);
    fp.shd_ms = config.shd_ms;
    fp.lambda_mine = lambda;
    fp.threshold = config.threshold;
    ForkEstimate bounds = fork_probability_bounds(fp);
    // All rows share the master seed: common random numbers keep the Monte
    // Carlo column monotone across the rate grid.
    MonteCarloEstimate mc =
        simulate_forking(g, config.shd_ms, lambda, config.trials, config.seed);
    table.rows.push_back({lambda, config.shd_ms, bounds.lower, bounds.upper,
                          mc.probability, mc.std_error, mc.trials});
  }

  CommandResult result;
  result.files.push_back(emit_table(config, "fork", table));
  return result;
}

// ---------------------------------------------------------------------------
// calibrate
// ---------------------------------------------------------------------------

CommandResult cmd_calibrate(const ExperimentConfig& base) {
  ExperimentConfig config = base;
  config.command = "calibrate";
  config.validate();
  ensure_out_dir(config);

  std::vector<double> thresholds{0.01, 0.05, 0.10, config.threshold};
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  Table table;
  table.columns = {"threshold",     "shd_ms",      "computational_speed", "n", "m",
                   "min_difficulty", "lambda_mine", "fork_upper"};
  for (double threshold : thresholds) {
    ForkParams fp;
    fp.params = model_params(config);
    fp.shd_ms = config.shd_ms;
    fp.threshold = threshold;
    double difficulty = min_difficulty(config.computational_speed, fp);
    fp.lambda_mine = mining_rate(config.computational_speed, difficulty);
    ForkEstimate round_trip = fork_probability_bounds(fp);
    table.rows.push_back({threshold, config.shd_ms, config.computational_speed, config.n,
                          config.m, difficulty, fp.lambda_mine, round_trip.upper});
  }

  CommandResult result;
  result.files.push_back(emit_table(config, "calibrate", table));
  return result;
}

// ---------------------------------------------------------------------------
// equilibrium
// ---------------------------------------------------------------------------

CommandResult cmd_equilibrium(const ExperimentConfig& base) {
  ExperimentConfig config = base;
  config.command = "equilibrium";
  config.validate();
  ensure_out_dir(config);

  std::vector<double> profits = config.profit_grid;
  if (profits.empty()) {
    if (config.profit_mining > 0) {
      profits.push_back(config.profit_mining);
    } else {
      profits = {0.0, 1e4, 1e5, 1e6, 1e7, 1e8};
    }
  }

  // Feasibility checks evaluate the degree mixture at the equilibrium size,
  // which costs O(n); skip the column beyond this size.
  constexpr double kFeasibilityCap = 1e6;

  Table table;
  table.columns = {"profit",     "status",     "n_star",          "n_star_floor",
                   "residual_rel", "iterations", "miner_bound_rhs", "feasible"};
  json reports = json::array();
  for (double profit : profits) {
    EconParams ec;
    ec.profit_mining = profit;
    ec.cost_constant = config.cost_constant;
    ec.threshold = config.threshold;
    ec.shd_ms = config.shd_ms;
    ec.computational_speed = config.computational_speed;

    json report;
    report["profit_mining"] = profit;
    report["cost_constant"] = ec.cost_constant;
    report["threshold"] = ec.threshold;
    report["shd_ms"] = ec.shd_ms;
    report["m"] = config.m;
    try {
      EquilibriumSolution sol = equilibrium_size(ec, config.m);
      json bound_rhs, feasible;
      if (sol.n_star_floor <= kFeasibilityCap) {
        ModelParams at_equilibrium;
        at_equilibrium.n = static_cast<node_t>(
            std::max<std::int64_t>(sol.n_star_floor, 2ll * config.m + 1));
        at_equilibrium.m = config.m;
        MinerBound bound = max_miners_bound(ec, at_equilibrium);
        bound_rhs = bound.rhs;
        feasible = bound.feasible;
      }
      table.rows.push_back({profit, "ok", sol.n_star, sol.n_star_floor, sol.residual_rel,
                            sol.iterations, bound_rhs, feasible});
      report["status"] = "ok";
      report["n_star"] = sol.n_star;
      report["n_star_floor"] = sol.n_star_floor;
      report["rhs"] = sol.rhs;
      report["residual_rel"] = sol.residual_rel;
      report["iterations"] = sol.iterations;
      report["branch_min_n"] = sol.branch_min_n;
      report["branch_min_value"] = sol.branch_min_value;
      report["left_branch_exists"] = sol.left_branch_exists;
      if (!bound_rhs.is_null()) {
        report["miner_bound_rhs"] = bound_rhs;
        report["feasible"] = feasible;
      }
    } catch (const ModelError& e) {
      table.rows.push_back(
          {profit, "no-equilibrium", json(), json(), json(), json(), json(), json()});
      report["status"] = "no-equilibrium";
      report["reason"] = e.what();
    }
    reports.push_back(std::move(report));
  }

  CommandResult result;
  result.files.push_back(emit_table(config, "equilibrium", table));

  json doc;
  doc["header"] = echo_text(config);
  doc["reports"] = std::move(reports);
  auto report_path = output_path(config, "equilibrium_report", ".json");
  write_text_file(report_path, doc.dump(2) + "\n");
  result.files.push_back(report_path);
  return result;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

CommandResult cmd_ingest(const ExperimentConfig& base) {
  ExperimentConfig config = base;
  config.command = "ingest";
  config.validate();
  if (config.input_path.empty()) {
    throw ParameterError("ingest requires an input arrival-log file");
  }
  std::ifstream in(config.input_path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + config.input_path + "' for reading");
  std::vector<ArrivalLog> logs = parse_arrival_log(in);
  ensure_out_dir(config);

  ModelParams params = model_params(config);

  Table summary;
  summary.columns = {"block_hash",      "records",        "epoch_input",
                     "reordered",       "truncated",      "shd_estimate_ms",
                     "shd_confidence",  "centrality",     "first_hop_fraction",
                     "within_band_fraction", "at_or_below_fraction"};
  Table points;
  points.columns = {"block_hash", "n_reached", "observed_ms", "radius_ms", "diameter_ms"};

  for (const ArrivalLog& log : logs) {
    json est_shd, est_conf;
    double shd_used = config.shd_ms;
    try {
      ShdEstimate est = estimate_shd(log);
      est_shd = est.shd_ms;
      est_conf = est.confidence;
      shd_used = est.shd_ms;
    } catch (const ParameterError&) {
      // Too few arrivals or too narrow a span: fall back to the configured
      // delay and leave the estimate cells empty.
    }
    CentralityReport centrality = classify_centrality(log, shd_used);
    FitReport fit = compare_to_model(log, params, shd_used);
    summary.rows.push_back({log.block_hash, log.arrivals.size(), log.epoch_input,
                            log.reordered, log.truncated, est_shd, est_conf,
                            centrality.high ? "high" : "low",
                            centrality.first_hop_fraction, fit.fraction_within_band,
                            fit.fraction_at_or_below_diameter});
    for (const EnvelopePoint& point : fit.points) {
      points.rows.push_back({log.block_hash, point.n_reached, point.observed_ms,
                             point.radius_valid ? json(point.radius_ms) : json(),
                             point.diameter_valid ? json(point.diameter_ms) : json()});
    }
  }

  CommandResult result;
  result.files.push_back(emit_table(config, "ingest_summary", summary));
  result.files.push_back(emit_table(config, "ingest_points", points));
  return result;
}

// ---------------------------------------------------------------------------

CommandResult run_command(const ExperimentConfig& config) {
  if (config.command == "degree-dist") return cmd_degree_dist(config);
  if (config.command == "diameter-sweep") return cmd_diameter_sweep(config);
  if (config.command == "propagate") return cmd_propagate(config);
  if (config.command == "fork") return cmd_fork(config);
  if (config.command == "calibrate") return cmd_calibrate(config);
  if (config.command == "equilibrium") return cmd_equilibrium(config);
  if (config.command == "ingest") return cmd_ingest(config);
  throw ParameterError("unknown command '" + config.command + "'");
}

}  // namespace evonet

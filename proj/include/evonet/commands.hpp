#pragma once
//! Experiment commands shared by the command-line front end and the tests.
//!
//! Every command is a pure function of its configuration: identical configs
//! produce byte-identical output files.  Each emitted file carries a header
//! line with the toolkit version and the full canonical config echo, so a
//! run can be reproduced from any one of its outputs.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "evonet/graph.hpp"

namespace evonet {

//! Serialization format for emitted tables.
enum class OutputFormat { Csv, Json };

//! Parse a format token ("csv" | "json").  Throws ParameterError otherwise.
OutputFormat format_from_token(const std::string& token);

//! Token for a format value.
const char* to_token(OutputFormat format);

//! Configuration for one experiment command.  Mirrors the CLI flags; a JSON
//! config file carries the same keys and explicit flags override it.
struct ExperimentConfig {
    std::string command;

    //! Network size and per-node outgoing link count.
    std::uint32_t n = 1000;
    std::uint32_t m = 8;

    //! Master seed.  Multi-seed commands derive graph i from seed + i.
    std::uint64_t seed = 1;
    //! Number of independent graph seeds to aggregate over.
    std::uint32_t seeds = 1;
    //! Monte Carlo trials per grid point.
    std::uint64_t trials = 10000;

    //! Single-hop delay in milliseconds.
    double shd_ms = 2000.0;
    //! Topology generator used by simulation commands.
    GraphModel model = GraphModel::EvolutionaryFixedM;

    //! Forking / calibration economics.  lambda_mine == 0 requests the
    //! default rate sweep; difficulty == 0 requests calibration first.
    double lambda_mine = 0.0;
    double threshold = 0.05;
    double computational_speed = 1.0;
    double difficulty = 0.0;

    //! Equilibrium economics.  An empty profit grid selects the default.
    double profit_mining = 0.0;
    double cost_constant = 1.0;
    std::vector<double> profit_grid;

    //! Sweep axes for the diameter command (empty selects the defaults).
    std::vector<std::uint32_t> n_values;
    std::vector<std::uint32_t> m_values;

    //! Arrival-log input path for the ingest command.
    std::string input_path;

    //! Output directory and table format.
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Csv;

    //! Validate ranges shared by every command.  Throws ParameterError.
    void validate() const;
};

//! Parse a JSON config document.  Unknown keys are rejected so that typos
//! fail loudly.  Throws ParseError on malformed input.
ExperimentConfig config_from_json(const std::string& text);

//! Canonical single-line JSON echo of a config (keys sorted).
std::string config_to_json(const ExperimentConfig& config);

//! Header line carried by every emitted file:
//!   "# evonet <version> | <command> | <canonical config json>"
std::string config_echo_line(const ExperimentConfig& config);

//! Paths written by a command, in emission order.
struct CommandResult {
    std::vector<std::filesystem::path> files;
};

//! Empirical in-degree histogram vs. the model pmf and a fitted power law.
CommandResult cmd_degree_dist(const ExperimentConfig& config);

//! Measured mean diameter against the analytic and simplified predictions
//! over a grid of network sizes and link counts.
CommandResult cmd_diameter_sweep(const ExperimentConfig& config);

//! Block propagation traces from extremal and random sources plus the
//! radius/diameter convergence envelopes.
CommandResult cmd_propagate(const ExperimentConfig& config);

//! Forking-probability bounds and Monte Carlo estimates over a mining-rate
//! grid.
CommandResult cmd_fork(const ExperimentConfig& config);

//! Minimum difficulty keeping the forking bound at or below the threshold.
CommandResult cmd_calibrate(const ExperimentConfig& config);

//! Equilibrium network size over a profit grid with feasibility reporting.
CommandResult cmd_equilibrium(const ExperimentConfig& config);

//! Parse arrival logs, estimate the single-hop delay, classify source
//! centrality, and compare observed arrivals with the model envelopes.
CommandResult cmd_ingest(const ExperimentConfig& config);

//! Dispatch on config.command.  Throws ParameterError for unknown commands.
CommandResult run_command(const ExperimentConfig& config);

}  // namespace evonet

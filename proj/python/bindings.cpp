//! Python bindings for the evonet core: topology generators, closed-form
//! analytics, propagation, forking, equilibrium, ingest and the experiment
//! commands.  Scalar-in/scalar-out functions map 1:1; stream-based APIs
//! accept and return strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "evonet/analytic.hpp"
#include "evonet/commands.hpp"
#include "evonet/equilibrium.hpp"
#include "evonet/errors.hpp"
#include "evonet/forking.hpp"
#include "evonet/graph.hpp"
#include "evonet/ingest.hpp"
#include "evonet/propagation.hpp"
#include "evonet/version.hpp"

namespace py = pybind11;
using namespace evonet;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Evolutionary random-graph model of a block-gossip overlay network";
  m.attr("__version__") = version_string;

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ArithmeticError);
  py::register_exception<ConnectivityError>(m, "ConnectivityError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::enum_<GraphModel>(m, "GraphModel")
      .value("Random", GraphModel::Random)
      .value("ScaleFree", GraphModel::ScaleFree)
      .value("EvolutionaryFixedM", GraphModel::EvolutionaryFixedM)
      .value("EvolutionaryBernoulli", GraphModel::EvolutionaryBernoulli)
      .value("Custom", GraphModel::Custom);

  py::enum_<EvolutionaryVariant>(m, "EvolutionaryVariant")
      .value("FixedM", EvolutionaryVariant::FixedM)
      .value("Bernoulli", EvolutionaryVariant::Bernoulli);

  py::class_<Edge>(m, "Edge")
      .def(py::init<node_t, node_t>())
      .def_readwrite("initiator", &Edge::initiator)
      .def_readwrite("target", &Edge::target);

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](node_t n, const std::vector<std::pair<node_t, node_t>>& pairs) {
            std::vector<Edge> edges;
            edges.reserve(pairs.size());
            for (const auto& [a, b] : pairs) edges.push_back({a, b});
            return Graph::from_edges(n, std::move(edges));
          },
          py::arg("n"), py::arg("edges"), "Build from (initiator, target) pairs")
      .def_property_readonly("size", &Graph::size)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("out_links", &Graph::out_links)
      .def_property_readonly("model", &Graph::model)
      .def_property_readonly("seed", &Graph::seed)
      .def("degree", &Graph::degree, py::arg("v"))
      .def("in_degree", &Graph::in_degree, py::arg("v"))
      .def(
          "neighbors",
          [](const Graph& g, node_t v) {
            auto span = g.neighbors(v);
            return std::vector<node_t>(span.begin(), span.end());
          },
          py::arg("v"))
      .def("save",
           [](const Graph& g) {
             std::ostringstream out;
             g.save(out);
             return out.str();
           })
      .def_static("load", [](const std::string& text) {
        std::istringstream in(text);
        return Graph::load(in);
      });

  m.def("gen_random", &gen_random, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("gen_scale_free", &gen_scale_free, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("gen_evolutionary_random", &gen_evolutionary_random, py::arg("n"), py::arg("m"),
        py::arg("seed"), py::arg("variant") = EvolutionaryVariant::FixedM);

  py::class_<DegreeHistogram>(m, "DegreeHistogram")
      .def_readonly("counts", &DegreeHistogram::counts)
      .def_readonly("total", &DegreeHistogram::total)
      .def("fraction", &DegreeHistogram::fraction, py::arg("k"))
      .def_property_readonly("max_k", &DegreeHistogram::max_k);
  m.def("in_degree_histogram", &in_degree_histogram);

  m.def("bfs_hops", &bfs_hops, py::arg("g"), py::arg("source"));
  m.def("eccentricity", &eccentricity, py::arg("g"), py::arg("v"));
  m.def("all_eccentricities", &all_eccentricities);
  m.def("radius", &radius);

  py::class_<EccentricityExtremes>(m, "EccentricityExtremes")
      .def_readonly("diameter", &EccentricityExtremes::diameter)
      .def_readonly("peripheral", &EccentricityExtremes::peripheral)
      .def_readonly("radius", &EccentricityExtremes::radius)
      .def_readonly("central", &EccentricityExtremes::central)
      .def_readonly("bfs_runs", &EccentricityExtremes::bfs_runs);
  m.def("eccentricity_extremes", &eccentricity_extremes);

  py::enum_<DiameterMode>(m, "DiameterMode")
      .value("Auto", DiameterMode::Auto)
      .value("Exact", DiameterMode::Exact)
      .value("Sampled", DiameterMode::Sampled);

  py::class_<DiameterResult>(m, "DiameterResult")
      .def_readonly("hops", &DiameterResult::hops)
      .def_readonly("exact", &DiameterResult::exact)
      .def_readonly("bfs_runs", &DiameterResult::bfs_runs);
  m.def("diameter", &diameter, py::arg("g"), py::arg("mode") = DiameterMode::Auto,
        py::arg("sources") = 64, py::arg("seed") = 1);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("n", &ModelParams::n)
      .def_readwrite("m", &ModelParams::m)
      .def_readwrite("k_max", &ModelParams::k_max)
      .def_readwrite("normalize", &ModelParams::normalize);

  py::class_<DegreePmf>(m, "DegreePmf")
      .def_readonly("probabilities", &DegreePmf::probabilities)
      .def_readonly("params", &DegreePmf::params);
  m.def("degree_pmf", &degree_pmf);

  py::class_<BranchingFactor>(m, "BranchingFactor")
      .def_readonly("value", &BranchingFactor::value)
      .def_readonly("terms", &BranchingFactor::terms)
      .def_readonly("truncated", &BranchingFactor::truncated);
  m.def("branching_factor", &branching_factor);

  m.def("harmonic", &harmonic, py::arg("n"));
  m.def("diameter_analytic", &diameter_analytic);
  m.def("diameter_simplified", &diameter_simplified, py::arg("n"));
  m.def("diameter_simplified_m", &diameter_simplified_m, py::arg("n"), py::arg("m"));
  m.def("diameter_random", &diameter_random, py::arg("n"), py::arg("mean_degree"));
  m.def("total_variation", &total_variation, py::arg("hist"), py::arg("pmf"));

  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("alpha", &PowerLawFit::alpha)
      .def_readonly("log_likelihood", &PowerLawFit::log_likelihood)
      .def_readonly("observations", &PowerLawFit::observations);
  m.def("fit_power_law", &fit_power_law);

  py::class_<PoissonFit>(m, "PoissonFit")
      .def_readonly("rate", &PoissonFit::rate)
      .def_readonly("log_likelihood", &PoissonFit::log_likelihood)
      .def_readonly("observations", &PoissonFit::observations);
  m.def("fit_poisson", &fit_poisson);
  m.def("restricted_log_likelihood", &restricted_log_likelihood, py::arg("hist"),
        py::arg("pmf"));

  py::class_<PropagationTrace>(m, "PropagationTrace")
      .def_readonly("source", &PropagationTrace::source)
      .def_readonly("shd_ms", &PropagationTrace::shd_ms)
      .def_readonly("hops", &PropagationTrace::hops)
      .def("arrival_ms", &PropagationTrace::arrival_ms, py::arg("v"))
      .def_property_readonly("max_hop", &PropagationTrace::max_hop)
      .def("to_csv", [](const PropagationTrace& t) {
        std::ostringstream out;
        t.to_csv(out);
        return out.str();
      });
  m.def("simulate_propagation", &simulate_propagation, py::arg("g"), py::arg("source"),
        py::arg("shd_ms"));

  py::class_<CumulativePoint>(m, "CumulativePoint")
      .def_readonly("time_ms", &CumulativePoint::time_ms)
      .def_readonly("nodes_reached", &CumulativePoint::nodes_reached);
  m.def("cumulative_arrivals", &cumulative_arrivals);
  m.def("convergence_radius", &convergence_radius, py::arg("n_reached"), py::arg("params"),
        py::arg("shd_ms"));
  m.def("convergence_diameter", &convergence_diameter, py::arg("n_reached"),
        py::arg("params"), py::arg("shd_ms"));

  py::class_<ForkParams>(m, "ForkParams")
      .def(py::init<>())
      .def_readwrite("params", &ForkParams::params)
      .def_readwrite("shd_ms", &ForkParams::shd_ms)
      .def_readwrite("lambda_mine", &ForkParams::lambda_mine)
      .def_readwrite("threshold", &ForkParams::threshold);

  py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
      .def_readonly("probability", &MonteCarloEstimate::probability)
      .def_readonly("std_error", &MonteCarloEstimate::std_error)
      .def_readonly("trials", &MonteCarloEstimate::trials);

  py::class_<ForkEstimate>(m, "ForkEstimate")
      .def_readonly("lower", &ForkEstimate::lower)
      .def_readonly("upper", &ForkEstimate::upper)
      .def_readonly("monte_carlo", &ForkEstimate::monte_carlo);

  m.def("mining_rate", &mining_rate, py::arg("computational_speed"),
        py::arg("mining_difficulty"));
  m.def("fork_probability_bounds", &fork_probability_bounds);
  m.def("min_difficulty", &min_difficulty, py::arg("computational_speed"), py::arg("fp"));
  m.def("simulate_forking", &simulate_forking, py::arg("g"), py::arg("shd_ms"),
        py::arg("lambda_mine"), py::arg("trials"), py::arg("seed"));

  py::class_<EconParams>(m, "EconParams")
      .def(py::init<>())
      .def_readwrite("profit_mining", &EconParams::profit_mining)
      .def_readwrite("cost_constant", &EconParams::cost_constant)
      .def_readwrite("threshold", &EconParams::threshold)
      .def_readwrite("shd_ms", &EconParams::shd_ms)
      .def_readwrite("computational_speed", &EconParams::computational_speed);

  m.def("cost_mining", &cost_mining, py::arg("ec"), py::arg("mining_difficulty"));

  py::class_<MinerBound>(m, "MinerBound")
      .def_readonly("rhs", &MinerBound::rhs)
      .def_readonly("feasible", &MinerBound::feasible);
  m.def("max_miners_bound", &max_miners_bound, py::arg("ec"), py::arg("params"));

  m.def("equilibrium_lhs", &equilibrium_lhs, py::arg("n"), py::arg("m"));

  py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
      .def_readonly("n_star", &EquilibriumSolution::n_star)
      .def_readonly("n_star_floor", &EquilibriumSolution::n_star_floor)
      .def_readonly("rhs", &EquilibriumSolution::rhs)
      .def_readonly("residual_rel", &EquilibriumSolution::residual_rel)
      .def_readonly("iterations", &EquilibriumSolution::iterations)
      .def_readonly("branch_min_n", &EquilibriumSolution::branch_min_n)
      .def_readonly("branch_min_value", &EquilibriumSolution::branch_min_value)
      .def_readonly("left_branch_exists", &EquilibriumSolution::left_branch_exists);
  m.def("equilibrium_size", &equilibrium_size, py::arg("ec"), py::arg("m"));

  py::class_<ArrivalRecord>(m, "ArrivalRecord")
      .def_readonly("node_id", &ArrivalRecord::node_id)
      .def_readonly("offset_ms", &ArrivalRecord::offset_ms);

  py::class_<ArrivalLog>(m, "ArrivalLog")
      .def_readonly("block_hash", &ArrivalLog::block_hash)
      .def_readonly("arrivals", &ArrivalLog::arrivals)
      .def_readonly("epoch_input", &ArrivalLog::epoch_input)
      .def_readonly("reordered", &ArrivalLog::reordered)
      .def_readonly("truncated", &ArrivalLog::truncated);

  m.def("parse_arrival_log", [](const std::string& text) {
    std::istringstream in(text);
    return parse_arrival_log(in);
  });
  m.def("serialize_arrival_logs", [](const std::vector<ArrivalLog>& logs) {
    std::ostringstream out;
    serialize_arrival_logs(logs, out);
    return out.str();
  });

  py::class_<ShdEstimate>(m, "ShdEstimate")
      .def_readonly("shd_ms", &ShdEstimate::shd_ms)
      .def_readonly("confidence", &ShdEstimate::confidence);
  m.def("estimate_shd", &estimate_shd);

  py::class_<CentralityReport>(m, "CentralityReport")
      .def_readonly("high", &CentralityReport::high)
      .def_readonly("first_hop_fraction", &CentralityReport::first_hop_fraction);
  m.def("classify_centrality", &classify_centrality, py::arg("log"), py::arg("shd_ms"),
        py::arg("cutoff") = 0.10);

  py::class_<EnvelopePoint>(m, "EnvelopePoint")
      .def_readonly("n_reached", &EnvelopePoint::n_reached)
      .def_readonly("observed_ms", &EnvelopePoint::observed_ms)
      .def_readonly("radius_ms", &EnvelopePoint::radius_ms)
      .def_readonly("diameter_ms", &EnvelopePoint::diameter_ms)
      .def_readonly("radius_valid", &EnvelopePoint::radius_valid)
      .def_readonly("diameter_valid", &EnvelopePoint::diameter_valid);

  py::class_<FitReport>(m, "FitReport")
      .def_readonly("points", &FitReport::points)
      .def_readonly("band_points", &FitReport::band_points)
      .def_readonly("fraction_within_band", &FitReport::fraction_within_band)
      .def_readonly("fraction_at_or_below_diameter",
                    &FitReport::fraction_at_or_below_diameter);
  m.def("compare_to_model", &compare_to_model, py::arg("log"), py::arg("params"),
        py::arg("shd_ms"));

  py::enum_<OutputFormat>(m, "OutputFormat")
      .value("Csv", OutputFormat::Csv)
      .value("Json", OutputFormat::Json);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("command", &ExperimentConfig::command)
      .def_readwrite("n", &ExperimentConfig::n)
      .def_readwrite("m", &ExperimentConfig::m)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("seeds", &ExperimentConfig::seeds)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("shd_ms", &ExperimentConfig::shd_ms)
      .def_readwrite("model", &ExperimentConfig::model)
      .def_readwrite("lambda_mine", &ExperimentConfig::lambda_mine)
      .def_readwrite("threshold", &ExperimentConfig::threshold)
      .def_readwrite("computational_speed", &ExperimentConfig::computational_speed)
      .def_readwrite("difficulty", &ExperimentConfig::difficulty)
      .def_readwrite("profit_mining", &ExperimentConfig::profit_mining)
      .def_readwrite("cost_constant", &ExperimentConfig::cost_constant)
      .def_readwrite("profit_grid", &ExperimentConfig::profit_grid)
      .def_readwrite("n_values", &ExperimentConfig::n_values)
      .def_readwrite("m_values", &ExperimentConfig::m_values)
      .def_readwrite("input_path", &ExperimentConfig::input_path)
      .def_readwrite("out_dir", &ExperimentConfig::out_dir)
      .def_readwrite("format", &ExperimentConfig::format);

  m.def("config_from_json", &config_from_json, py::arg("text"));
  m.def("config_to_json", &config_to_json, py::arg("config"));
  m.def("run_command", [](const ExperimentConfig& config) {
    CommandResult result = run_command(config);
    return result.files;
  });
}

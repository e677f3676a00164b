#pragma once

#include <cstdint>
#include <optional>

#include "evonet/analytic.hpp"
#include "evonet/graph.hpp"

namespace evonet {

//! Inputs for fork-probability analysis on the modeled network.
struct ForkParams {
  ModelParams params;
  double shd_ms = 2000.0;     //!< single-hop delay
  double lambda_mine = 0.0;   //!< per-miner block rate, blocks per ms
  double threshold = 0.05;    //!< acceptable fork probability

  //! Throws ParameterError unless shd_ms > 0, lambda_mine >= 0 and
  //! 0 < threshold < 1 (and the model parameters validate).
  void validate() const;
};

struct MonteCarloEstimate {
  double probability = 0.0;
  double std_error = 0.0;  //!< binomial standard error
  std::uint64_t trials = 0;
};

//! Analytic fork-probability window, optionally with the simulated estimate
//! alongside. The window evaluates the per-ring product at both the floor
//! and ceiling of the model diameter and orders the two results.
struct ForkEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<MonteCarloEstimate> monte_carlo;
};

//! Per-miner block rate: computational speed divided by mining difficulty.
//! Throws ParameterError when difficulty <= 0.
double mining_rate(double computational_speed, double mining_difficulty);

//! Probability that a competing block appears while one propagates:
//! 1 - prod_{i=1..D} exp(-shd * lambda * psi^i) for D at the floor and
//! ceiling of the model diameter. Throws DomainError when n <= 2m and
//! ModelError when the branching factor is <= 1.
ForkEstimate fork_probability_bounds(const ForkParams& fp);

//! Smallest difficulty that keeps the fork probability at or below
//! fp.threshold (pessimistic depth, i.e. the ceiling of the model
//! diameter). Throws ParameterError when computational_speed <= 0.
double min_difficulty(double computational_speed, const ForkParams& fp);

//! Monte Carlo fork frequency: each trial mines a block at a uniformly
//! random miner, spreads it hop-synchronously, and counts a fork if any
//! still-uninformed miner (Poisson at lambda_mine per ms) mines first.
//! Trials derive independent streams from (seed, trial index), so results
//! do not depend on execution order.
MonteCarloEstimate simulate_forking(const Graph& g, double shd_ms, double lambda_mine,
                                    std::uint64_t trials, std::uint64_t seed);

}  // namespace evonet

#include "evonet/forking.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "evonet/rng.hpp"

namespace evonet {

namespace {

//! Branching factor and model diameter with the fork-specific error surface.
struct ModelScale {
  double psi;
  double diameter;
};

ModelScale model_scale(const ModelParams& params) {
  double psi = branching_factor(params).value;
  if (params.n <= 2ULL * params.m)
    throw DomainError("fork analysis: needs n > 2m, got n=" + std::to_string(params.n) +
                      " m=" + std::to_string(params.m));
  if (!(psi > 1.0))
    throw ModelError("fork analysis: branching factor " + std::to_string(psi) +
                     " is not above 1; the model is degenerate at this size");
  double d = std::log(static_cast<double>(params.n) - 2.0 * params.m) / std::log(psi) + 2.0;
  return {psi, d};
}

//! Sum of psi^i for i = 1..depth.
double reach_sum(double psi, std::uint32_t depth) {
  double sum = 0.0, power = 1.0;
  for (std::uint32_t i = 1; i <= depth; ++i) {
    power *= psi;
    sum += power;
  }
  return sum;
}

}  // namespace

void ForkParams::validate() const {
  params.validate();
  if (!(shd_ms > 0.0)) throw ParameterError("ForkParams: shd_ms must be positive");
  if (!(lambda_mine >= 0.0)) throw ParameterError("ForkParams: lambda_mine must be >= 0");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ParameterError("ForkParams: threshold must lie in (0, 1)");
}

double mining_rate(double computational_speed, double mining_difficulty) {
  if (!(mining_difficulty > 0.0))
    throw ParameterError("mining_rate: difficulty must be positive");
  if (!(computational_speed >= 0.0))
    throw ParameterError("mining_rate: computational speed must be >= 0");
  return computational_speed / mining_difficulty;
}

ForkEstimate fork_probability_bounds(const ForkParams& fp) {
  fp.validate();
  auto scale = model_scale(fp.params);
  auto depth_floor = static_cast<std::uint32_t>(std::floor(scale.diameter));
  auto depth_ceil = static_cast<std::uint32_t>(std::ceil(scale.diameter));
  double at_floor =
      -std::expm1(-fp.shd_ms * fp.lambda_mine * reach_sum(scale.psi, depth_floor));
  double at_ceil =
      -std::expm1(-fp.shd_ms * fp.lambda_mine * reach_sum(scale.psi, depth_ceil));
  ForkEstimate est;
  est.lower = std::min(at_floor, at_ceil);
  est.upper = std::max(at_floor, at_ceil);
  return est;
}

double min_difficulty(double computational_speed, const ForkParams& fp) {
  fp.validate();
  if (!(computational_speed > 0.0))
    throw ParameterError("min_difficulty: computational speed must be positive");
  auto scale = model_scale(fp.params);
  // Pessimistic propagation depth: the ceiling evaluation is the upper fork
  // bound, so a difficulty derived from it keeps that bound at the threshold.
  auto depth = static_cast<std::uint32_t>(std::ceil(scale.diameter));
  double exposure = fp.shd_ms * reach_sum(scale.psi, depth);
  return computational_speed * exposure / -std::log1p(-fp.threshold);
}

MonteCarloEstimate simulate_forking(const Graph& g, double shd_ms, double lambda_mine,
                                    std::uint64_t trials, std::uint64_t seed) {
  if (!(shd_ms > 0.0)) throw ParameterError("simulate_forking: shd_ms must be positive");
  if (!(lambda_mine >= 0.0))
    throw ParameterError("simulate_forking: lambda_mine must be >= 0");
  if (trials < 1) throw ParameterError("simulate_forking: needs at least one trial");
  if (auto missing = first_unreachable(g); missing >= 0)
    throw ConnectivityError("simulate_forking: node " + std::to_string(missing) +
                                " is unreachable; coverage would never complete",
                            static_cast<node_t>(missing));

  node_t n = g.size();
  std::uint64_t forks = 0;

  if (lambda_mine > 0.0 && n > 1) {
#pragma omp parallel reduction(+ : forks)
    {
      std::vector<std::int32_t> dist;
#pragma omp for schedule(static)
      for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
        auto source = static_cast<node_t>(rng.below(n));
        dist = bfs_hops(g, source);
        // A miner at hop h keeps mining for h*shd ms; it beats the
        // propagating block iff its exponential waiting time is shorter.
        for (node_t v = 0; v < n; ++v) {
          if (v == source) continue;
          if (rng.exponential(lambda_mine) < dist[v] * shd_ms) {
            ++forks;
            break;
          }
        }
      }
    }
  }

  MonteCarloEstimate est;
  est.trials = trials;
  est.probability = static_cast<double>(forks) / static_cast<double>(trials);
  est.std_error =
      std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(trials));
  return est;
}

}  // namespace evonet

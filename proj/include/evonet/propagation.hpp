#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "evonet/analytic.hpp"
#include "evonet/graph.hpp"

namespace evonet {

//! Result of a hop-synchronous broadcast: every neighbor of an informed
//! node becomes informed exactly one single-hop delay later.
struct PropagationTrace {
  node_t source = 0;
  double shd_ms = 0.0;
  std::vector<std::uint32_t> hops;  //!< per-node hop count from the source

  double arrival_ms(node_t v) const { return hops[v] * shd_ms; }
  std::uint32_t max_hop() const;

  //! CSV rows `node,hop,arrival_ms`.
  void to_csv(std::ostream& out) const;
};

//! Broadcast from `source` over a connected graph. Throws ConnectivityError
//! when any node is unreachable, ParameterError for a bad source or delay.
PropagationTrace simulate_propagation(const Graph& g, node_t source, double shd_ms);

//! One step of the coverage curve: `nodes_reached` nodes informed by
//! `time_ms` (inclusive).
struct CumulativePoint {
  double time_ms;
  std::uint64_t nodes_reached;
};

//! Non-decreasing step series of the trace, one point per hop level,
//! ending at full coverage.
std::vector<CumulativePoint> cumulative_arrivals(const PropagationTrace& trace);

//! CSV rows `time_ms,nodes_reached`.
void cumulative_to_csv(const std::vector<CumulativePoint>& series, std::ostream& out);

//! Center-start convergence envelope: time for a block starting at the
//! center to reach n_reached nodes, (ln(n_reached)/ln(psi)) * shd_ms.
double convergence_radius(std::uint64_t n_reached, const ModelParams& params, double shd_ms);

//! Periphery-start envelope: (ln(n_reached - 2m)/ln(psi) + 2) * shd_ms.
//! Requires n_reached > 2m.
double convergence_diameter(std::uint64_t n_reached, const ModelParams& params, double shd_ms);

//! Same envelopes with a precomputed branching factor, for sweeps that
//! evaluate many points against one model.
double convergence_radius_at(std::uint64_t n_reached, double psi, double shd_ms);
double convergence_diameter_at(std::uint64_t n_reached, std::uint32_t m, double psi,
                               double shd_ms);

}  // namespace evonet

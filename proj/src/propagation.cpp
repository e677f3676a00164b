#include "evonet/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace evonet {

namespace {

void check_delay(double shd_ms) {
  if (!(shd_ms > 0.0)) throw ParameterError("single-hop delay must be positive");
}

double require_supercritical(double psi) {
  if (!(psi > 1.0))
    throw ModelError("convergence envelope: branching factor " + std::to_string(psi) +
                     " is not above 1");
  return std::log(psi);
}

}  // namespace

std::uint32_t PropagationTrace::max_hop() const {
  return hops.empty() ? 0 : *std::max_element(hops.begin(), hops.end());
}

void PropagationTrace::to_csv(std::ostream& out) const {
  out << "node,hop,arrival_ms\n";
  char buf[64];
  for (node_t v = 0; v < hops.size(); ++v) {
    std::snprintf(buf, sizeof buf, "%.12g", arrival_ms(v));
    out << v << ',' << hops[v] << ',' << buf << '\n';
  }
}

PropagationTrace simulate_propagation(const Graph& g, node_t source, double shd_ms) {
  if (source >= g.size()) throw ParameterError("simulate_propagation: source out of range");
  check_delay(shd_ms);
  auto dist = bfs_hops(g, source);
  PropagationTrace trace;
  trace.source = source;
  trace.shd_ms = shd_ms;
  trace.hops.resize(g.size());
  for (node_t v = 0; v < g.size(); ++v) {
    if (dist[v] < 0)
      throw ConnectivityError(
          "simulate_propagation: node " + std::to_string(v) + " never receives the block", v);
    trace.hops[v] = static_cast<std::uint32_t>(dist[v]);
  }
  return trace;
}

std::vector<CumulativePoint> cumulative_arrivals(const PropagationTrace& trace) {
  std::vector<std::uint64_t> per_hop(trace.max_hop() + 1, 0);
  for (std::uint32_t h : trace.hops) ++per_hop[h];
  std::vector<CumulativePoint> series(per_hop.size());
  std::uint64_t reached = 0;
  for (std::size_t h = 0; h < per_hop.size(); ++h) {
    reached += per_hop[h];
    series[h] = {static_cast<double>(h) * trace.shd_ms, reached};
  }
  return series;
}

void cumulative_to_csv(const std::vector<CumulativePoint>& series, std::ostream& out) {
  out << "time_ms,nodes_reached\n";
  char buf[64];
  for (const CumulativePoint& p : series) {
    std::snprintf(buf, sizeof buf, "%.12g", p.time_ms);
    out << buf << ',' << p.nodes_reached << '\n';
  }
}

double convergence_radius(std::uint64_t n_reached, const ModelParams& params, double shd_ms) {
  params.validate();
  if (n_reached < 1 || n_reached > params.n)
    throw ParameterError("convergence_radius: n_reached must lie in [1, n]");
  return convergence_radius_at(n_reached, branching_factor(params).value, shd_ms);
}

double convergence_radius_at(std::uint64_t n_reached, double psi, double shd_ms) {
  check_delay(shd_ms);
  if (n_reached < 1) throw ParameterError("convergence_radius: n_reached must be positive");
  double log_psi = require_supercritical(psi);
  return std::log(static_cast<double>(n_reached)) / log_psi * shd_ms;
}

double convergence_diameter(std::uint64_t n_reached, const ModelParams& params,
                            double shd_ms) {
  params.validate();
  if (n_reached > params.n)
    throw ParameterError("convergence_diameter: n_reached must not exceed n");
  return convergence_diameter_at(n_reached, params.m, branching_factor(params).value, shd_ms);
}

double convergence_diameter_at(std::uint64_t n_reached, std::uint32_t m, double psi,
                               double shd_ms) {
  check_delay(shd_ms);
  if (n_reached <= 2ULL * m)
    throw DomainError("convergence_diameter: needs n_reached > 2m, got n_reached=" +
                      std::to_string(n_reached) + " m=" + std::to_string(m));
  double log_psi = require_supercritical(psi);
  return (std::log(static_cast<double>(n_reached) - 2.0 * m) / log_psi + 2.0) * shd_ms;
}

}  // namespace evonet

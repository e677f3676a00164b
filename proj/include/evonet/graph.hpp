#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "evonet/errors.hpp"

namespace evonet {

using node_t = std::uint32_t;

//! How a graph was built. Stored in the edge-list header so experiments can
//! be reconstructed from files alone.
enum class GraphModel {
  Random,                  //!< sequential uniform random linking
  ScaleFree,               //!< preferential attachment
  EvolutionaryFixedM,      //!< each joiner opens min(j, m) links
  EvolutionaryBernoulli,   //!< each prior node linked with prob min(m/j, 1)
  Custom,                  //!< assembled from an explicit edge list
};

const char* to_token(GraphModel model);
GraphModel model_from_token(const std::string& token);

enum class EvolutionaryVariant { FixedM, Bernoulli };

//! A link as it was opened: `initiator` joined later (or was chosen to dial
//! out) and connected to `target`. Traversal treats links as undirected;
//! the direction only matters for in-link statistics.
struct Edge {
  node_t initiator;
  node_t target;
};

//! Immutable undirected graph in compressed adjacency form.
class Graph {
 public:
  //! Build from an explicit edge list. Rejects self-loops, duplicate links
  //! (regardless of direction) and endpoints outside [0, n).
  static Graph from_edges(node_t n, std::vector<Edge> edges,
                          GraphModel model = GraphModel::Custom,
                          std::uint32_t m = 0, std::uint64_t seed = 0);

  node_t size() const { return n_; }
  std::uint64_t edge_count() const { return edges_.size(); }
  //! Configured out-link budget (0 for models without one).
  std::uint32_t out_links() const { return m_; }
  GraphModel model() const { return model_; }
  std::uint64_t seed() const { return seed_; }

  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const node_t> neighbors(node_t v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::uint32_t degree(node_t v) const { return offsets_[v + 1] - offsets_[v]; }
  //! Links where v is the target, i.e. opened towards v by later joiners.
  std::uint32_t in_degree(node_t v) const { return in_degree_[v]; }
  //! Links opened by v itself.
  std::uint32_t initiated_degree(node_t v) const { return degree(v) - in_degree_[v]; }

  //! Plain-text edge list: `n m model seed` header, then one
  //! `initiator target` pair per line.
  void save(std::ostream& out) const;
  static Graph load(std::istream& in);

 private:
  Graph() = default;

  node_t n_ = 0;
  std::uint32_t m_ = 0;
  GraphModel model_ = GraphModel::Custom;
  std::uint64_t seed_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;   // n+1 prefix offsets into adjacency_
  std::vector<node_t> adjacency_;
  std::vector<std::uint32_t> in_degree_;
};

//! Sequential uniform attachment: node j links each already-present node
//! independently with probability p.
Graph gen_random(node_t n, double p, std::uint64_t seed);

//! Preferential attachment: a (m+1)-clique seed, then every joiner opens m
//! links to distinct nodes picked proportionally to current degree.
Graph gen_scale_free(node_t n, std::uint32_t m, std::uint64_t seed);

//! Evolutionary attachment: joiner j opens min(j, m) links to distinct
//! uniformly chosen predecessors (FixedM), or links each predecessor
//! independently with probability min(m/j, 1) (Bernoulli).
Graph gen_evolutionary_random(node_t n, std::uint32_t m, std::uint64_t seed,
                              EvolutionaryVariant variant = EvolutionaryVariant::FixedM);

//! Histogram of in-link counts. `counts[k]` = number of nodes with k
//! incoming links; keys with zero count are omitted (except k=0 when present).
struct DegreeHistogram {
  std::map<std::uint32_t, std::uint64_t> counts;
  std::uint64_t total = 0;  //!< number of nodes histogrammed

  std::uint32_t max_k() const { return counts.empty() ? 0 : counts.rbegin()->first; }
  double fraction(std::uint32_t k) const;
  //! Accumulate another histogram (used when aggregating seeds).
  DegreeHistogram& operator+=(const DegreeHistogram& other);
  //! CSV rows `k,count,fraction` for k = 0..max_k.
  void to_csv(std::ostream& out) const;
};

DegreeHistogram in_degree_histogram(const Graph& g);

//! Hop distance from `source` to every node; -1 where unreachable.
std::vector<std::int32_t> bfs_hops(const Graph& g, node_t source);

//! Smallest node id unreachable from node 0, or -1 if connected.
std::int64_t first_unreachable(const Graph& g);

//! Max hop distance from v to anywhere. Throws ConnectivityError when some
//! node is unreachable.
std::uint32_t eccentricity(const Graph& g, node_t v);

//! Eccentricity of every node, by full breadth-first sweep: O(n * edges).
std::vector<std::uint32_t> all_eccentricities(const Graph& g);

//! Exact diameter and radius with witness nodes, computed by iteratively
//! tightening per-node eccentricity bounds; on small-world graphs this
//! needs a few dozen traversals instead of n.
struct EccentricityExtremes {
  std::uint32_t diameter = 0;
  node_t peripheral = 0;  //!< a node whose eccentricity equals the diameter
  std::uint32_t radius = 0;
  node_t central = 0;     //!< a node whose eccentricity equals the radius
  std::uint32_t bfs_runs = 0;
};
EccentricityExtremes eccentricity_extremes(const Graph& g);

enum class DiameterMode { Auto, Exact, Sampled };

struct DiameterResult {
  std::uint32_t hops = 0;
  bool exact = true;      //!< false = lower bound from sampled sources
  std::uint32_t bfs_runs = 0;
};

//! Diameter in hops. Auto mode is exact up to 20000 nodes and falls back to
//! a sampled lower bound (64 sources plus a double sweep) beyond that.
DiameterResult diameter(const Graph& g, DiameterMode mode = DiameterMode::Auto,
                        std::uint32_t sources = 64, std::uint64_t seed = 1);

//! Minimum eccentricity. Throws ConnectivityError when disconnected.
std::uint32_t radius(const Graph& g);

}  // namespace evonet

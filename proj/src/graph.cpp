#include "evonet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "evonet/rng.hpp"

namespace evonet {

namespace {

std::uint64_t pair_key(node_t a, node_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

//! Breadth-first hop distances from src into dist (-1 = unreachable).
//! Returns the number of reached nodes; the visit queue is reused storage.
node_t bfs(const Graph& g, node_t src, std::vector<std::int32_t>& dist,
           std::vector<node_t>& queue) {
  dist.assign(g.size(), -1);
  queue.clear();
  queue.push_back(src);
  dist[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    node_t v = queue[head];
    std::int32_t next = dist[v] + 1;
    for (node_t w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = next;
        queue.push_back(w);
      }
    }
  }
  return static_cast<node_t>(queue.size());
}

[[noreturn]] void throw_unreachable(const std::vector<std::int32_t>& dist, node_t from,
                                    const char* op) {
  node_t witness = 0;
  while (witness < dist.size() && dist[witness] >= 0) ++witness;
  throw ConnectivityError(std::string(op) + ": node " + std::to_string(witness) +
                              " is unreachable from node " + std::to_string(from),
                          witness);
}

std::uint64_t parse_u64(std::string_view text, std::uint64_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(std::string("expected unsigned integer for ") + what + ", got '" +
                         std::string(text) + "'",
                     line);
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

const char* to_token(GraphModel model) {
  switch (model) {
    case GraphModel::Random: return "random";
    case GraphModel::ScaleFree: return "scale-free";
    case GraphModel::EvolutionaryFixedM: return "evol-fixed-m";
    case GraphModel::EvolutionaryBernoulli: return "evol-bernoulli";
    case GraphModel::Custom: return "custom";
  }
  return "custom";
}

GraphModel model_from_token(const std::string& token) {
  if (token == "random") return GraphModel::Random;
  if (token == "scale-free") return GraphModel::ScaleFree;
  if (token == "evol-fixed-m") return GraphModel::EvolutionaryFixedM;
  if (token == "evol-bernoulli") return GraphModel::EvolutionaryBernoulli;
  if (token == "custom") return GraphModel::Custom;
  throw ParameterError("unknown graph model token '" + token + "'");
}

Graph Graph::from_edges(node_t n, std::vector<Edge> edges, GraphModel model,
                        std::uint32_t m, std::uint64_t seed) {
  if (n == 0) throw ParameterError("graph needs at least one node");

  Graph g;
  g.n_ = n;
  g.m_ = m;
  g.model_ = model;
  g.seed_ = seed;
  g.edges_ = std::move(edges);

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(g.edges_.size() * 2);
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const Edge& e = g.edges_[i];
    auto at = "edge " + std::to_string(i) + ": ";
    if (e.initiator >= n || e.target >= n)
      throw ParameterError(at + "endpoint outside [0, " + std::to_string(n) + ")");
    if (e.initiator == e.target)
      throw ParameterError(at + "self-loop at node " + std::to_string(e.target));
    if (!seen.insert(pair_key(e.initiator, e.target)).second)
      throw ParameterError(at + "duplicate link between " + std::to_string(e.initiator) +
                           " and " + std::to_string(e.target));
  }

  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.initiator + 1];
    ++g.offsets_[e.target + 1];
  }
  for (node_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  g.in_degree_.assign(n, 0);
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.initiator]++] = e.target;
    g.adjacency_[cursor[e.target]++] = e.initiator;
    ++g.in_degree_[e.target];
  }
  return g;
}

void Graph::save(std::ostream& out) const {
  out << n_ << ' ' << m_ << ' ' << to_token(model_) << ' ' << seed_ << '\n';
  for (const Edge& e : edges_) out << e.initiator << ' ' << e.target << '\n';
  if (!out) throw IoError("failed while writing edge list");
}

Graph Graph::load(std::istream& in) {
  std::string line;
  std::uint64_t lineno = 0;

  // Header: n m model seed
  if (!std::getline(in, line)) throw ParseError("empty edge-list file", 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto fields = split_fields(line);
  if (fields.size() != 4)
    throw ParseError("header must be 'n m model seed'", lineno);
  auto n64 = parse_u64(fields[0], lineno, "node count");
  if (n64 == 0 || n64 > std::numeric_limits<node_t>::max())
    throw ParseError("node count out of range", lineno);
  auto m64 = parse_u64(fields[1], lineno, "link budget");
  GraphModel model;
  try {
    model = model_from_token(std::string(fields[2]));
  } catch (const ParameterError& e) {
    throw ParseError(e.what(), lineno);
  }
  std::uint64_t seed = parse_u64(fields[3], lineno, "seed");

  std::vector<Edge> edges;
  std::vector<std::uint64_t> lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fields = split_fields(line);
    if (fields.empty()) continue;  // tolerate blank lines
    if (fields.size() != 2)
      throw ParseError("expected 'initiator target'", lineno);
    auto a = parse_u64(fields[0], lineno, "initiator");
    auto b = parse_u64(fields[1], lineno, "target");
    if (a > std::numeric_limits<node_t>::max() || b > std::numeric_limits<node_t>::max())
      throw ParseError("node id out of range", lineno);
    edges.push_back({static_cast<node_t>(a), static_cast<node_t>(b)});
    lines.push_back(lineno);
  }
  if (in.bad()) throw IoError("failed while reading edge list");

  try {
    return from_edges(static_cast<node_t>(n64), std::move(edges), model,
                      static_cast<std::uint32_t>(m64), seed);
  } catch (const ParameterError& e) {
    // Map "edge <i>: ..." back to its source line for a usable message.
    std::string what = e.what();
    std::uint64_t at = 0;
    if (what.rfind("edge ", 0) == 0) {
      std::size_t idx = std::stoul(what.substr(5));
      if (idx < lines.size()) at = lines[idx];
    }
    throw ParseError(what, at);
  }
}

Graph gen_random(node_t n, double p, std::uint64_t seed) {
  if (n == 0) throw ParameterError("gen_random: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("gen_random: p must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
  for (node_t j = 1; j < n; ++j)
    for (node_t i = 0; i < j; ++i)
      if (rng.bernoulli(p)) edges.push_back({j, i});
  return Graph::from_edges(n, std::move(edges), GraphModel::Random, 0, seed);
}

Graph gen_scale_free(node_t n, std::uint32_t m, std::uint64_t seed) {
  if (m == 0) throw ParameterError("gen_scale_free: m must be positive");
  if (n < m + 1)
    throw ParameterError("gen_scale_free: n must be at least m+1 to seed the clique");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m) * n);
  // Endpoint pool: each node appears once per incident link, so a uniform
  // pick from the pool is a degree-proportional pick.
  std::vector<node_t> pool;
  pool.reserve(2 * static_cast<std::size_t>(m) * n);
  for (node_t a = 1; a <= m; ++a) {
    for (node_t b = 0; b < a; ++b) {
      edges.push_back({a, b});
      pool.push_back(a);
      pool.push_back(b);
    }
  }
  std::vector<node_t> picks;
  for (node_t j = m + 1; j < n; ++j) {
    std::size_t snapshot = pool.size();  // degrees as of j's arrival
    picks.clear();
    while (picks.size() < m) {
      node_t c = pool[rng.below(snapshot)];
      if (std::find(picks.begin(), picks.end(), c) == picks.end()) picks.push_back(c);
    }
    for (node_t c : picks) {
      edges.push_back({j, c});
      pool.push_back(j);
      pool.push_back(c);
    }
  }
  return Graph::from_edges(n, std::move(edges), GraphModel::ScaleFree, m, seed);
}

Graph gen_evolutionary_random(node_t n, std::uint32_t m, std::uint64_t seed,
                              EvolutionaryVariant variant) {
  if (n == 0) throw ParameterError("gen_evolutionary_random: n must be positive");
  if (m == 0) throw ParameterError("gen_evolutionary_random: m must be positive");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m) * n);
  GraphModel model;
  if (variant == EvolutionaryVariant::FixedM) {
    model = GraphModel::EvolutionaryFixedM;
    for (node_t j = 1; j < n; ++j)
      for (node_t t : rng.distinct_below(m, j)) edges.push_back({j, t});
  } else {
    model = GraphModel::EvolutionaryBernoulli;
    for (node_t j = 1; j < n; ++j) {
      double p = std::min(static_cast<double>(m) / j, 1.0);
      for (node_t i = 0; i < j; ++i)
        if (rng.bernoulli(p)) edges.push_back({j, i});
    }
  }
  return Graph::from_edges(n, std::move(edges), model, m, seed);
}

double DegreeHistogram::fraction(std::uint32_t k) const {
  auto it = counts.find(k);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

DegreeHistogram& DegreeHistogram::operator+=(const DegreeHistogram& other) {
  for (auto [k, c] : other.counts) counts[k] += c;
  total += other.total;
  return *this;
}

void DegreeHistogram::to_csv(std::ostream& out) const {
  out << "k,count,fraction\n";
  char buf[64];
  for (std::uint32_t k = 0; counts.size() && k <= max_k(); ++k) {
    auto it = counts.find(k);
    std::uint64_t c = it == counts.end() ? 0 : it->second;
    std::snprintf(buf, sizeof buf, "%.12g",
                  total ? static_cast<double>(c) / static_cast<double>(total) : 0.0);
    out << k << ',' << c << ',' << buf << '\n';
  }
}

DegreeHistogram in_degree_histogram(const Graph& g) {
  DegreeHistogram h;
  h.total = g.size();
  for (node_t v = 0; v < g.size(); ++v) ++h.counts[g.in_degree(v)];
  return h;
}

std::vector<std::int32_t> bfs_hops(const Graph& g, node_t source) {
  if (source >= g.size()) throw ParameterError("bfs_hops: source node out of range");
  std::vector<std::int32_t> dist;
  std::vector<node_t> queue;
  bfs(g, source, dist, queue);
  return dist;
}

std::int64_t first_unreachable(const Graph& g) {
  std::vector<std::int32_t> dist;
  std::vector<node_t> queue;
  if (bfs(g, 0, dist, queue) == g.size()) return -1;
  node_t witness = 0;
  while (dist[witness] >= 0) ++witness;
  return witness;
}

std::uint32_t eccentricity(const Graph& g, node_t v) {
  if (v >= g.size()) throw ParameterError("eccentricity: node out of range");
  std::vector<std::int32_t> dist;
  std::vector<node_t> queue;
  if (bfs(g, v, dist, queue) != g.size()) throw_unreachable(dist, v, "eccentricity");
  return static_cast<std::uint32_t>(dist[queue.back()]);
}

std::vector<std::uint32_t> all_eccentricities(const Graph& g) {
  node_t n = g.size();
  {
    std::vector<std::int32_t> dist;
    std::vector<node_t> queue;
    if (bfs(g, 0, dist, queue) != n) throw_unreachable(dist, 0, "all_eccentricities");
  }
  std::vector<std::uint32_t> ecc(n);
#pragma omp parallel
  {
    std::vector<std::int32_t> dist;
    std::vector<node_t> queue;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
      bfs(g, static_cast<node_t>(v), dist, queue);
      ecc[v] = static_cast<std::uint32_t>(dist[queue.back()]);
    }
  }
  return ecc;
}

EccentricityExtremes eccentricity_extremes(const Graph& g) {
  node_t n = g.size();
  EccentricityExtremes out;
  if (n == 1) return out;

  std::vector<std::int32_t> dist;
  std::vector<node_t> queue;
  std::vector<std::uint32_t> lo(n, 0);
  std::vector<std::uint32_t> hi(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<node_t> alive(n);
  for (node_t v = 0; v < n; ++v) alive[v] = v;

  std::uint32_t diam_lo = 0;
  std::uint32_t rad_hi = std::numeric_limits<std::uint32_t>::max();

  // Start from a hub: its traversal tightens bounds fastest.
  node_t v = 0;
  for (node_t w = 1; w < n; ++w)
    if (g.degree(w) > g.degree(v)) v = w;

  bool pick_max = true;  // alternate: push the diameter bound, then the radius bound
  while (!alive.empty()) {
    if (bfs(g, v, dist, queue) != n) throw_unreachable(dist, v, "eccentricity_extremes");
    ++out.bfs_runs;
    auto ecc = static_cast<std::uint32_t>(dist[queue.back()]);
    if (ecc > diam_lo) {
      diam_lo = ecc;
      out.peripheral = v;
    }
    if (ecc < rad_hi) {
      rad_hi = ecc;
      out.central = v;
    }

    std::size_t keep = 0;
    for (node_t w : alive) {
      auto d = static_cast<std::uint32_t>(dist[w]);
      lo[w] = std::max(lo[w], std::max(ecc >= d ? ecc - d : d, d));
      hi[w] = std::min(hi[w], ecc + d);
      if (hi[w] <= diam_lo && lo[w] >= rad_hi) continue;  // settled for both bounds
      alive[keep++] = w;
    }
    alive.resize(keep);
    if (alive.empty()) break;

    node_t next = alive[0];
    if (pick_max) {
      for (node_t w : alive)
        if (hi[w] > hi[next]) next = w;
    } else {
      for (node_t w : alive)
        if (lo[w] < lo[next]) next = w;
    }
    pick_max = !pick_max;
    v = next;
  }

  out.diameter = diam_lo;
  out.radius = rad_hi;
  return out;
}

DiameterResult diameter(const Graph& g, DiameterMode mode, std::uint32_t sources,
                        std::uint64_t seed) {
  node_t n = g.size();
  if (mode == DiameterMode::Auto)
    mode = n <= 20000 ? DiameterMode::Exact : DiameterMode::Sampled;

  if (mode == DiameterMode::Exact) {
    auto ext = eccentricity_extremes(g);
    return {ext.diameter, true, ext.bfs_runs};
  }

  if (sources == 0) throw ParameterError("diameter: sampled mode needs at least one source");
  DiameterResult out;
  out.exact = false;
  std::vector<std::int32_t> dist;
  std::vector<node_t> queue;
  Rng rng(seed);
  node_t farthest = 0;
  for (node_t s : rng.distinct_below(sources, n)) {
    if (bfs(g, s, dist, queue) != n) throw_unreachable(dist, s, "diameter");
    ++out.bfs_runs;
    auto ecc = static_cast<std::uint32_t>(dist[queue.back()]);
    if (ecc > out.hops) {
      out.hops = ecc;
      farthest = queue.back();
    }
  }
  // Double sweep: the far end of the best traversal is itself a good source.
  bfs(g, farthest, dist, queue);
  ++out.bfs_runs;
  out.hops = std::max(out.hops, static_cast<std::uint32_t>(dist[queue.back()]));
  return out;
}

std::uint32_t radius(const Graph& g) { return eccentricity_extremes(g).radius; }

}  // namespace evonet

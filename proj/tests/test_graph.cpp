#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "evonet/graph.hpp"

using namespace evonet;

namespace {

Graph path_graph(node_t n) {
  std::vector<Edge> edges;
  for (node_t v = 1; v < n; ++v) edges.push_back({v, static_cast<node_t>(v - 1)});
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace

TEST_CASE("evolutionary generator opens min(j, m) links per joiner") {
  Graph g = gen_evolutionary_random(1000, 8, 1);
  // sum_{j=1}^{999} min(j, 8) = 1+2+...+7 + 993*8
  CHECK(g.edge_count() == 7964);
  for (node_t j = 0; j < g.size(); ++j) {
    CHECK(g.initiated_degree(j) == std::min<std::uint32_t>(j, 8));
  }
  std::uint64_t in_sum = 0;
  for (node_t v = 0; v < g.size(); ++v) in_sum += g.in_degree(v);
  CHECK(in_sum == g.edge_count());
}

TEST_CASE("evolutionary generator is deterministic per seed") {
  Graph a = gen_evolutionary_random(300, 8, 7);
  Graph b = gen_evolutionary_random(300, 8, 7);
  Graph c = gen_evolutionary_random(300, 8, 8);
  REQUIRE(a.edge_count() == b.edge_count());
  bool same = true;
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    same = same && a.edges()[i].initiator == b.edges()[i].initiator &&
           a.edges()[i].target == b.edges()[i].target;
  }
  CHECK(same);
  bool differs = c.edge_count() != a.edge_count();
  for (std::size_t i = 0; !differs && i < a.edges().size(); ++i) {
    differs = a.edges()[i].target != c.edges()[i].target;
  }
  CHECK(differs);
}

TEST_CASE("small networks form a complete graph") {
  Graph g = gen_evolutionary_random(9, 8, 3);
  CHECK(g.edge_count() == 36);
  for (node_t v = 0; v < 9; ++v) CHECK(g.degree(v) == 8);
}

TEST_CASE("bernoulli variant links early nodes fully and stays near m per joiner") {
  Graph g = gen_evolutionary_random(1000, 8, 5, EvolutionaryVariant::Bernoulli);
  // Joiners at positions <= m connect to every predecessor.
  for (node_t j = 1; j <= 8; ++j) CHECK(g.initiated_degree(j) == j);
  // Expected total is the same 7964 as the fixed variant; allow 5 sigma.
  CHECK(g.edge_count() > 7500);
  CHECK(g.edge_count() < 8450);
  CHECK(g.model() == GraphModel::EvolutionaryBernoulli);
}

TEST_CASE("uniform random generator matches its link probability") {
  Graph g = gen_random(1000, 0.01, 11);
  double mean_degree = 2.0 * g.edge_count() / g.size();
  CHECK(mean_degree > 9.0);   // binomial(499500, 0.01) concentrates hard
  CHECK(mean_degree < 11.0);
  CHECK(g.model() == GraphModel::Random);
  CHECK_THROWS_AS(gen_random(10, 1.5, 1), ParameterError);
  CHECK_THROWS_AS(gen_random(10, -0.1, 1), ParameterError);
}

TEST_CASE("scale-free generator has a clique seed and a heavy tail") {
  Graph g = gen_scale_free(1000, 8, 13);
  // C(9,2) clique edges plus m links for each of the 991 later joiners.
  CHECK(g.edge_count() == 36 + 991 * 8);
  std::uint32_t max_degree = 0;
  for (node_t v = 0; v < g.size(); ++v) max_degree = std::max(max_degree, g.degree(v));
  // Preferential attachment produces hubs far above the mean degree of ~16.
  CHECK(max_degree > 40);
  CHECK(g.model() == GraphModel::ScaleFree);
}

TEST_CASE("from_edges rejects malformed edge lists") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), ParameterError);             // self loop
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 0}, {0, 1}}), ParameterError);     // duplicate
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 0}, {1, 0}}), ParameterError);     // duplicate
  CHECK_THROWS_AS(Graph::from_edges(3, {{3, 0}}), ParameterError);             // out of range
  CHECK_THROWS_WITH_AS(Graph::from_edges(3, {{1, 0}, {2, 2}}),
                       doctest::Contains("edge 1"), ParameterError);
}

TEST_CASE("save and load round-trip a graph") {
  Graph g = gen_evolutionary_random(64, 3, 21);
  std::ostringstream out;
  g.save(out);
  std::istringstream in(out.str());
  Graph back = Graph::load(in);
  REQUIRE(back.size() == g.size());
  REQUIRE(back.edge_count() == g.edge_count());
  CHECK(back.model() == g.model());
  CHECK(back.seed() == g.seed());
  CHECK(back.out_links() == g.out_links());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    CHECK(back.edges()[i].initiator == g.edges()[i].initiator);
    CHECK(back.edges()[i].target == g.edges()[i].target);
  }
}

TEST_CASE("load reports the offending line") {
  std::istringstream bad_header("not a header\n");
  CHECK_THROWS_WITH_AS(Graph::load(bad_header), doctest::Contains("line 1"), ParseError);

  std::istringstream bad_edge("3 1 custom 0\n1 0\n2 two\n");
  CHECK_THROWS_WITH_AS(Graph::load(bad_edge), doctest::Contains("line 3"), ParseError);

  std::istringstream bad_model("3 1 nonsense 0\n1 0\n");
  CHECK_THROWS_AS(Graph::load(bad_model), ParseError);
}

TEST_CASE("model tokens round-trip") {
  for (GraphModel model :
       {GraphModel::Random, GraphModel::ScaleFree, GraphModel::EvolutionaryFixedM,
        GraphModel::EvolutionaryBernoulli, GraphModel::Custom}) {
    CHECK(model_from_token(to_token(model)) == model);
  }
  CHECK_THROWS_AS(model_from_token("nope"), ParameterError);
}

TEST_CASE("in-degree histogram counts every node") {
  Graph g = gen_evolutionary_random(500, 8, 2);
  DegreeHistogram hist = in_degree_histogram(g);
  CHECK(hist.total == 500);
  std::uint64_t count_sum = 0;
  for (const auto& [k, count] : hist.counts) count_sum += count;
  CHECK(count_sum == 500);
  double fraction_sum = 0.0;
  for (const auto& [k, count] : hist.counts) fraction_sum += hist.fraction(k);
  CHECK(fraction_sum == doctest::Approx(1.0).epsilon(1e-12));

  DegreeHistogram merged = hist;
  merged += hist;
  CHECK(merged.total == 1000);
  CHECK(merged.fraction(hist.counts.begin()->first) ==
        doctest::Approx(hist.fraction(hist.counts.begin()->first)).epsilon(1e-12));
}

TEST_CASE("histogram csv has dense k rows") {
  DegreeHistogram hist;
  hist.counts[0] = 1;
  hist.counts[2] = 3;
  hist.total = 4;
  std::ostringstream out;
  hist.to_csv(out);
  CHECK(out.str() == "k,count,fraction\n0,1,0.25\n1,0,0\n2,3,0.75\n");
}

TEST_CASE("bfs distances on a path") {
  Graph g = path_graph(4);
  auto hops = bfs_hops(g, 0);
  REQUIRE(hops.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(hops[i] == i);
  CHECK_THROWS_AS(bfs_hops(g, 9), ParameterError);
}

TEST_CASE("unreachable nodes are reported") {
  Graph connected = gen_evolutionary_random(100, 2, 1);
  CHECK(first_unreachable(connected) == -1);

  Graph split = Graph::from_edges(4, {{1, 0}, {3, 2}});
  CHECK(first_unreachable(split) == 2);
  CHECK_THROWS_AS(eccentricity(split, 0), ConnectivityError);
  try {
    eccentricity(split, 0);
  } catch (const ConnectivityError& e) {
    CHECK(e.unreachable_node() == 2);
  }
}

TEST_CASE("eccentricities of a path") {
  Graph g = path_graph(5);
  CHECK(eccentricity(g, 0) == 4);
  CHECK(eccentricity(g, 2) == 2);
  auto all = all_eccentricities(g);
  REQUIRE(all.size() == 5);
  CHECK(all[0] == 4);
  CHECK(all[1] == 3);
  CHECK(all[2] == 2);
  CHECK(all[3] == 3);
  CHECK(all[4] == 4);
}

TEST_CASE("eccentricity extremes match the exhaustive sweep") {
  for (std::uint64_t seed : {1, 2, 3}) {
    Graph g = gen_evolutionary_random(300, 8, seed);
    auto all = all_eccentricities(g);
    std::uint32_t true_diameter = *std::max_element(all.begin(), all.end());
    std::uint32_t true_radius = *std::min_element(all.begin(), all.end());

    EccentricityExtremes extremes = eccentricity_extremes(g);
    CHECK(extremes.diameter == true_diameter);
    CHECK(extremes.radius == true_radius);
    CHECK(all[extremes.peripheral] == true_diameter);
    CHECK(all[extremes.central] == true_radius);
    // The point of the bounding algorithm: far fewer traversals than n.
    CHECK(extremes.bfs_runs < g.size());
  }
}

TEST_CASE("eccentricity extremes on degenerate graphs") {
  Graph single = Graph::from_edges(1, {});
  EccentricityExtremes one = eccentricity_extremes(single);
  CHECK(one.diameter == 0);
  CHECK(one.radius == 0);

  Graph star = Graph::from_edges(5, {{1, 0}, {2, 0}, {3, 0}, {4, 0}});
  EccentricityExtremes s = eccentricity_extremes(star);
  CHECK(s.diameter == 2);
  CHECK(s.radius == 1);
  CHECK(s.central == 0);
}

TEST_CASE("diameter auto mode is exact for small graphs") {
  Graph g = gen_evolutionary_random(400, 8, 17);
  DiameterResult exact = diameter(g, DiameterMode::Exact);
  DiameterResult auto_mode = diameter(g, DiameterMode::Auto);
  DiameterResult sampled = diameter(g, DiameterMode::Sampled, 16, 5);
  CHECK(exact.exact);
  CHECK(auto_mode.exact);
  CHECK(auto_mode.hops == exact.hops);
  CHECK_FALSE(sampled.exact);
  CHECK(sampled.hops <= exact.hops);
  CHECK(sampled.hops >= 1);
  CHECK(radius(g) <= exact.hops);
}

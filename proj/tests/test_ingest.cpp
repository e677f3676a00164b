#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "evonet/ingest.hpp"
#include "evonet/propagation.hpp"
#include "evonet/rng.hpp"

using namespace evonet;

namespace {

std::vector<ArrivalLog> parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_arrival_log(in);
}

ArrivalLog log_from_offsets(std::vector<std::int64_t> offsets) {
  ArrivalLog log;
  log.block_hash = "cafe";
  std::sort(offsets.begin(), offsets.end());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    log.arrivals.push_back({static_cast<std::int64_t>(i), offsets[i]});
  }
  return log;
}

}  // namespace

TEST_CASE("empty input parses to an empty list") {
  CHECK(parse_text("").empty());
  CHECK(parse_text("block_hash,node_id,arrival_ms\n").empty());
}

TEST_CASE("single row parses to a single rebased log") {
  auto logs = parse_text("block_hash,node_id,arrival_ms\nab12,7,5000\n");
  REQUIRE(logs.size() == 1);
  CHECK(logs[0].block_hash == "ab12");
  REQUIRE(logs[0].arrivals.size() == 1);
  CHECK(logs[0].arrivals[0].node_id == 7);
  CHECK(logs[0].arrivals[0].offset_ms == 0);
  CHECK_FALSE(logs[0].reordered);
  CHECK_FALSE(logs[0].truncated);
}

TEST_CASE("two blocks of three rows each") {
  auto logs = parse_text(
      "block_hash,node_id,arrival_ms\n"
      "aaaa,1,100\naaaa,2,300\nbbbb,9,50\naaaa,3,900\nbbbb,8,70\nbbbb,7,90\n");
  REQUIRE(logs.size() == 2);
  CHECK(logs[0].block_hash == "aaaa");
  CHECK(logs[0].arrivals.size() == 3);
  CHECK(logs[1].block_hash == "bbbb");
  CHECK(logs[1].arrivals.size() == 3);
  CHECK(logs[0].arrivals[0].offset_ms == 0);
  CHECK(logs[0].arrivals[2].offset_ms == 800);
  CHECK(logs[1].arrivals[2].offset_ms == 40);
}

TEST_CASE("unordered rows are rebased, sorted and flagged") {
  auto logs = parse_text("block_hash,node_id,arrival_ms\ncccc,1,900\ncccc,2,100\n");
  REQUIRE(logs.size() == 1);
  CHECK(logs[0].reordered);
  CHECK(logs[0].arrivals[0].node_id == 2);
  CHECK(logs[0].arrivals[0].offset_ms == 0);
  CHECK(logs[0].arrivals[1].offset_ms == 800);
}

TEST_CASE("epoch timestamps are detected by magnitude") {
  auto logs = parse_text(
      "block_hash,node_id,arrival_ms\n"
      "dddd,1,1531000000000\ndddd,2,1531000002000\n");
  REQUIRE(logs.size() == 1);
  CHECK(logs[0].epoch_input);
  CHECK(logs[0].arrivals[0].offset_ms == 0);
  CHECK(logs[0].arrivals[1].offset_ms == 2000);

  auto relative = parse_text("block_hash,node_id,arrival_ms\neeee,1,0\neeee,2,2000\n");
  CHECK_FALSE(relative[0].epoch_input);
}

TEST_CASE("blocks beyond a thousand rows are truncated") {
  std::string text = "block_hash,node_id,arrival_ms\n";
  for (int i = 0; i < 1005; ++i) {
    text += "ffff," + std::to_string(i) + "," + std::to_string(10 * i) + "\n";
  }
  auto logs = parse_text(text);
  REQUIRE(logs.size() == 1);
  CHECK(logs[0].truncated);
  CHECK(logs[0].arrivals.size() == 1000);
  CHECK(logs[0].arrivals.back().offset_ms == 9990);
}

TEST_CASE("malformed rows carry their line number") {
  CHECK_THROWS_WITH_AS(parse_text("wrong,header,line\n"), doctest::Contains("line 1"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_text("block_hash,node_id,arrival_ms\naaaa,1\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_text("block_hash,node_id,arrival_ms\naaaa,1,100\naaaa,x,200\n"),
      doctest::Contains("line 3"), ParseError);
  CHECK_THROWS_AS(parse_text("block_hash,node_id,arrival_ms\naaaa,1,-5\n"), ParseError);
  CHECK_THROWS_AS(parse_text("block_hash,node_id,arrival_ms\n,1,5\n"), ParseError);
}

TEST_CASE("serialization round-trips to canonical form") {
  const std::string messy =
      "block_hash,node_id,arrival_ms\n"
      " aaaa , 2 , 300 \naaaa,1,100\nbbbb,5,1531000000000\n";
  auto logs = parse_text(messy);
  std::ostringstream out;
  serialize_arrival_logs(logs, out);
  const std::string canonical = out.str();
  CHECK(canonical ==
        "block_hash,node_id,arrival_ms\n"
        "aaaa,1,0\naaaa,2,200\nbbbb,5,0\n");
  // Canonical form is a fixed point of parse+serialize.
  auto again = parse_text(canonical);
  std::ostringstream out2;
  serialize_arrival_logs(again, out2);
  CHECK(out2.str() == canonical);
}

TEST_CASE("exact multiples resolve to the fundamental spacing") {
  ArrivalLog log = log_from_offsets({0, 2000, 2000, 4000, 4000, 6000, 6000, 8000, 8000, 10000});
  ShdEstimate est = estimate_shd(log);
  CHECK(std::abs(est.shd_ms - 2000.0) <= 1.0);
  CHECK(est.confidence == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("the delay estimate needs enough arrivals and enough span") {
  CHECK_THROWS_AS(estimate_shd(log_from_offsets({0, 2000, 2000, 4000, 4000})),
                  ParameterError);
  CHECK_THROWS_AS(
      estimate_shd(log_from_offsets({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11})),
      ParameterError);
}

TEST_CASE("jittered multiples recover the planted spacing within five percent") {
  int recovered = 0;
  for (std::uint64_t fixture = 0; fixture < 10; ++fixture) {
    Rng rng = Rng::stream(2024, fixture);
    double spacing = 500.0 + rng.uniform01() * 4500.0;
    Graph g = gen_evolutionary_random(300, 8, 100 + fixture);
    auto source = static_cast<node_t>(rng.below(300));
    PropagationTrace trace = simulate_propagation(g, source, spacing);
    std::vector<std::int64_t> offsets;
    offsets.reserve(trace.hops.size());
    for (node_t v = 0; v < g.size(); ++v) {
      double jitter = rng.uniform(-0.1 * spacing, 0.1 * spacing);
      offsets.push_back(
          static_cast<std::int64_t>(std::llround(trace.arrival_ms(v) + jitter)));
    }
    std::int64_t base = *std::min_element(offsets.begin(), offsets.end());
    for (auto& off : offsets) off -= base;
    ShdEstimate est = estimate_shd(log_from_offsets(std::move(offsets)));
    if (std::abs(est.shd_ms - spacing) <= 0.05 * spacing) ++recovered;
  }
  CHECK(recovered == 10);
}

TEST_CASE("centrality classification by first-hop fraction") {
  ArrivalLog central = log_from_offsets({0, 100, 500, 900, 1500, 1999, 2000});
  CentralityReport high = classify_centrality(central, 2000.0);
  CHECK(high.high);
  CHECK(high.first_hop_fraction == doctest::Approx(1.0));

  std::vector<std::int64_t> sparse(1000);
  for (int i = 0; i < 1000; ++i) sparse[i] = i == 0 ? 0 : 100000 + i;
  CentralityReport low = classify_centrality(log_from_offsets(std::move(sparse)), 2000.0);
  CHECK_FALSE(low.high);
  CHECK(low.first_hop_fraction == doctest::Approx(0.001));
}

TEST_CASE("centrality verdict is monotone in the cutoff") {
  ArrivalLog log = log_from_offsets({0, 500, 1500, 4000, 9000, 9500, 9900, 12000});
  double fraction = classify_centrality(log, 2000.0).first_hop_fraction;
  bool prev = true;
  for (double cutoff : {0.0, 0.1, 0.3, 0.5, 0.9, 1.0}) {
    bool verdict = classify_centrality(log, 2000.0, cutoff).high;
    CHECK((verdict == (fraction >= cutoff)));
    CHECK((prev || !verdict));  // once low, stays low as the cutoff grows
    prev = verdict;
  }
  CHECK_THROWS_AS(classify_centrality(log, 0.0), ParameterError);
  CHECK_THROWS_AS(classify_centrality(log, 2000.0, 1.5), ParameterError);
}

TEST_CASE("a log mirroring a center-start broadcast sits under the envelope") {
  ModelParams params;
  params.n = 300;
  params.m = 8;
  Graph g = gen_evolutionary_random(300, 8, 77);
  EccentricityExtremes extremes = eccentricity_extremes(g);
  PropagationTrace trace = simulate_propagation(g, extremes.central, 2000.0);
  std::vector<std::int64_t> offsets;
  for (node_t v = 0; v < g.size(); ++v) {
    offsets.push_back(static_cast<std::int64_t>(trace.arrival_ms(v)));
  }
  FitReport fit = compare_to_model(log_from_offsets(std::move(offsets)), params, 2000.0);
  CHECK(fit.band_points > 0);
  CHECK(fit.fraction_at_or_below_diameter >= 0.95);
}

TEST_CASE("an all-zero log sits below both envelopes") {
  ModelParams params;
  params.n = 100;
  params.m = 8;
  ArrivalLog log = log_from_offsets(std::vector<std::int64_t>(60, 0));
  FitReport fit = compare_to_model(log, params, 2000.0);
  CHECK(fit.fraction_at_or_below_diameter == doctest::Approx(1.0));
  CHECK(fit.fraction_within_band == doctest::Approx(0.0));
  for (const EnvelopePoint& point : fit.points) {
    CHECK(point.observed_ms == doctest::Approx(0.0));
    if (point.n_reached > 1) {
      CHECK(point.observed_ms < point.radius_ms);  // below even the center bound
    }
  }
}

TEST_CASE("the envelope band is positive wherever both bounds are valid") {
  ModelParams params;
  params.n = 200;
  params.m = 8;
  std::vector<std::int64_t> offsets(200);
  for (int i = 0; i < 200; ++i) offsets[i] = 40 * i;
  FitReport fit = compare_to_model(log_from_offsets(std::move(offsets)), params, 2000.0);
  std::uint64_t band_points = 0;
  for (const EnvelopePoint& point : fit.points) {
    if (point.radius_valid && point.diameter_valid) {
      ++band_points;
      CHECK(point.diameter_ms - point.radius_ms > 0.0);
    }
  }
  CHECK(band_points == fit.band_points);
  CHECK(band_points == 200 - 16);
}

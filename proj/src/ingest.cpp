#include "evonet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "evonet/propagation.hpp"

namespace evonet {

namespace {

constexpr const char* kHeader = "block_hash,node_id,arrival_ms";
constexpr std::size_t kMaxRecordsPerBlock = 1000;  // dataset scope: first 1000 miners
constexpr std::int64_t kEpochThresholdMs = 10000000000;  // ~year 2286 as offset, 1970+ as epoch
constexpr double kGridFloorMs = 100.0;
constexpr double kGridCeilMs = 8000.0;

std::int64_t parse_i64(std::string_view text, std::uint64_t line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0)
    throw ParseError(std::string("expected non-negative integer for ") + what + ", got '" +
                         std::string(text) + "'",
                     line);
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<ArrivalLog> parse_arrival_log(std::istream& in) {
  std::vector<ArrivalLog> logs;
  std::string line;
  std::uint64_t lineno = 0;

  if (!std::getline(in, line)) return logs;  // empty input, empty list
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (trim(line) != kHeader)
    throw ParseError(std::string("expected header '") + kHeader + "'", lineno);

  struct RawArrival {
    std::int64_t node_id;
    std::int64_t at_ms;
  };
  std::vector<std::vector<RawArrival>> raw;
  std::unordered_map<std::string, std::size_t> index;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto c1 = line.find(',');
    auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      throw ParseError("expected 'block_hash,node_id,arrival_ms'", lineno);
    auto hash = trim(std::string_view(line).substr(0, c1));
    if (hash.empty()) throw ParseError("block hash must not be empty", lineno);
    auto node = parse_i64(trim(std::string_view(line).substr(c1 + 1, c2 - c1 - 1)), lineno,
                          "node_id");
    auto at = parse_i64(trim(std::string_view(line).substr(c2 + 1)), lineno, "arrival_ms");

    auto [it, fresh] = index.try_emplace(std::string(hash), logs.size());
    if (fresh) {
      logs.push_back({std::string(hash), {}, false, false, false});
      raw.emplace_back();
    }
    raw[it->second].push_back({node, at});
  }
  if (in.bad()) throw IoError("failed while reading arrival log");

  for (std::size_t b = 0; b < logs.size(); ++b) {
    ArrivalLog& log = logs[b];
    std::vector<RawArrival>& rows = raw[b];
    std::int64_t base = rows.front().at_ms;
    std::int64_t prev = rows.front().at_ms;
    for (const RawArrival& r : rows) {
      base = std::min(base, r.at_ms);
      if (r.at_ms < prev) log.reordered = true;
      prev = r.at_ms;
    }
    log.epoch_input = base > kEpochThresholdMs;
    log.arrivals.reserve(rows.size());
    for (const RawArrival& r : rows) log.arrivals.push_back({r.node_id, r.at_ms - base});
    std::sort(log.arrivals.begin(), log.arrivals.end(), [](const auto& a, const auto& b) {
      return a.offset_ms != b.offset_ms ? a.offset_ms < b.offset_ms : a.node_id < b.node_id;
    });
    if (log.arrivals.size() > kMaxRecordsPerBlock) {
      log.arrivals.resize(kMaxRecordsPerBlock);
      log.truncated = true;
    }
  }
  return logs;
}

void serialize_arrival_logs(const std::vector<ArrivalLog>& logs, std::ostream& out) {
  out << kHeader << '\n';
  for (const ArrivalLog& log : logs)
    for (const ArrivalRecord& r : log.arrivals)
      out << log.block_hash << ',' << r.node_id << ',' << r.offset_ms << '\n';
  if (!out) throw IoError("failed while writing arrival log");
}

ShdEstimate estimate_shd(const ArrivalLog& log) {
  if (log.arrivals.size() < 10)
    throw ParameterError("estimate_shd: needs at least 10 arrivals, got " +
                         std::to_string(log.arrivals.size()));
  std::vector<double> offsets(log.arrivals.size());
  for (std::size_t i = 0; i < offsets.size(); ++i)
    offsets[i] = static_cast<double>(log.arrivals[i].offset_ms);
  double span = *std::max_element(offsets.begin(), offsets.end());
  double grid_ceil = std::min(kGridCeilMs, span);
  if (grid_ceil < kGridFloorMs)
    throw ParameterError("estimate_shd: offsets span less than " +
                         std::to_string(static_cast<int>(kGridFloorMs)) +
                         " ms; the spacing is unresolvable");

  auto score_at = [&](double s) {
    double acc = 0.0;
    for (double x : offsets) {
      double r = x - std::round(x / s) * s;
      acc += r * r;
    }
    double half = s / 2;
    return acc / static_cast<double>(offsets.size()) / (half * half);
  };

  std::vector<double> scores;
  scores.reserve(static_cast<std::size_t>(grid_ceil - kGridFloorMs) + 1);
  double best = std::numeric_limits<double>::infinity();
  for (double s = kGridFloorMs; s <= grid_ceil; s += 1.0) {
    scores.push_back(score_at(s));
    best = std::min(best, scores.back());
  }
  // Multiples of the true spacing are also multiples of its divisors, so the
  // minimum can be tied; the largest tied spacing is the fundamental.
  std::size_t pick = scores.size() - 1;
  while (scores[pick] > best + 1e-9) --pick;

  ShdEstimate est;
  est.shd_ms = kGridFloorMs + static_cast<double>(pick);
  est.confidence = std::clamp(1.0 - best, 0.0, 1.0);
  return est;
}

CentralityReport classify_centrality(const ArrivalLog& log, double shd_ms, double cutoff) {
  if (!(shd_ms > 0.0)) throw ParameterError("classify_centrality: shd_ms must be positive");
  if (!(cutoff >= 0.0 && cutoff <= 1.0))
    throw ParameterError("classify_centrality: cutoff must lie in [0, 1]");
  CentralityReport report;
  if (log.arrivals.empty()) return report;
  std::size_t within = 0;
  for (const ArrivalRecord& r : log.arrivals)
    if (static_cast<double>(r.offset_ms) <= shd_ms) ++within;
  report.first_hop_fraction =
      static_cast<double>(within) / static_cast<double>(log.arrivals.size());
  report.high = report.first_hop_fraction >= cutoff;
  return report;
}

FitReport compare_to_model(const ArrivalLog& log, const ModelParams& params, double shd_ms) {
  params.validate();
  if (!(shd_ms > 0.0)) throw ParameterError("compare_to_model: shd_ms must be positive");
  double psi = branching_factor(params).value;
  if (!(psi > 1.0))
    throw ModelError("compare_to_model: branching factor " + std::to_string(psi) +
                     " is not above 1");

  FitReport report;
  report.points.reserve(log.arrivals.size());
  std::uint64_t within_band = 0, at_or_below = 0;
  for (std::size_t i = 0; i < log.arrivals.size(); ++i) {
    EnvelopePoint p;
    p.n_reached = i + 1;
    p.observed_ms = static_cast<double>(log.arrivals[i].offset_ms);
    if (p.n_reached <= params.n) {
      p.radius_valid = true;
      p.radius_ms = convergence_radius_at(p.n_reached, psi, shd_ms);
      if (p.n_reached > 2ULL * params.m) {
        p.diameter_valid = true;
        p.diameter_ms = convergence_diameter_at(p.n_reached, params.m, psi, shd_ms);
        ++report.band_points;
        if (p.observed_ms <= p.diameter_ms) {
          ++at_or_below;
          if (p.observed_ms >= p.radius_ms) ++within_band;
        }
      }
    }
    report.points.push_back(p);
  }
  if (report.band_points > 0) {
    report.fraction_within_band =
        static_cast<double>(within_band) / static_cast<double>(report.band_points);
    report.fraction_at_or_below_diameter =
        static_cast<double>(at_or_below) / static_cast<double>(report.band_points);
  }
  return report;
}

}  // namespace evonet

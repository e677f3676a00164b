#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "evonet/analytic.hpp"

namespace evonet {

struct ArrivalRecord {
  std::int64_t node_id;
  std::int64_t offset_ms;  //!< milliseconds since the block's first observation
};

//! Arrival observations for one block, rebased and ordered. Absolute clocks
//! across logging nodes are untrusted, so only offsets are kept.
struct ArrivalLog {
  std::string block_hash;
  std::vector<ArrivalRecord> arrivals;  //!< sorted by (offset, node id); first offset 0
  bool epoch_input = false;  //!< timestamps looked like epoch milliseconds
  bool reordered = false;    //!< input rows were not in arrival order
  bool truncated = false;    //!< more than 1000 rows; earliest 1000 kept
};

//! Parse the canonical CSV (`block_hash,node_id,arrival_ms` header). One log
//! per distinct hash, in order of first appearance. Empty input gives an
//! empty list; malformed rows raise ParseError with the line number.
std::vector<ArrivalLog> parse_arrival_log(std::istream& in);

//! Canonical CSV form of the logs (offsets, sorted rows).
void serialize_arrival_logs(const std::vector<ArrivalLog>& logs, std::ostream& out);

struct ShdEstimate {
  double shd_ms = 0.0;
  double confidence = 0.0;  //!< 1 - normalized residual, in [0, 1]
};

//! Recover the single-hop delay as the spacing that best explains the
//! offsets as near-multiples: minimizer of the mean squared residual to the
//! nearest multiple, normalized by (spacing/2)^2, over a 1 ms grid from
//! 100 ms up to min(8000 ms, last offset). Ties prefer the largest spacing,
//! so exact multiples resolve to the fundamental rather than a divisor.
//! Throws ParameterError for fewer than 10 arrivals or offsets spanning
//! less than the grid floor.
ShdEstimate estimate_shd(const ArrivalLog& log);

struct CentralityReport {
  bool high = false;
  double first_hop_fraction = 0.0;  //!< arrivals with offset <= shd, over all arrivals
};

//! A block spreading from a well-connected (central) source reaches many
//! nodes within the first hop delay.
CentralityReport classify_centrality(const ArrivalLog& log, double shd_ms,
                                     double cutoff = 0.10);

//! One observed arrival count against the model's convergence envelopes.
struct EnvelopePoint {
  std::uint64_t n_reached = 0;
  double observed_ms = 0.0;
  double radius_ms = 0.0;    //!< center-start envelope; valid when n_reached <= n
  double diameter_ms = 0.0;  //!< periphery-start envelope; valid when n_reached > 2m
  bool radius_valid = false;
  bool diameter_valid = false;
};

struct FitReport {
  std::vector<EnvelopePoint> points;
  std::uint64_t band_points = 0;  //!< points where both envelopes are valid
  double fraction_within_band = 0.0;          //!< radius <= observed <= diameter
  double fraction_at_or_below_diameter = 0.0;
};

//! Score a log against the model envelopes evaluated at its network size.
FitReport compare_to_model(const ArrivalLog& log, const ModelParams& params, double shd_ms);

}  // namespace evonet

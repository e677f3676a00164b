#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "evonet/errors.hpp"

namespace evonet {

//! One round of the splitmix64 mixer. Used to derive independent seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

//! Deterministic random source. The engine is std::mt19937_64, whose output
//! sequence is fixed by the standard; all distributions are implemented here
//! rather than via std:: distribution objects, which are free to differ
//! between standard libraries. Together this makes every simulation in the
//! toolkit reproduce byte-identically across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  //! Independent stream for a numbered sub-task (trial, graph, ...) of a
  //! master seed. Streams derived from distinct indices do not overlap in
  //! any statistically detectable way, and the mapping is pure, so parallel
  //! schedules cannot change results.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(mix64(master ^ mix64(index + 0x517cc1b727220a95ULL)));
  }

  std::uint64_t next() { return engine_(); }

  //! Unbiased integer in [0, bound) by rejection (Lemire's method).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("Rng::below: bound must be positive");
    // Rejection threshold: multiples of bound representable in 64 bits.
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = engine_();
      __uint128_t m = static_cast<__uint128_t>(r) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold)
        return static_cast<std::uint64_t>(m >> 64);
    }
  }

  //! Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  //! Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  //! Exponential variate with the given rate (mean 1/rate).
  double exponential(double rate) {
    if (!(rate > 0)) throw ParameterError("Rng::exponential: rate must be positive");
    // -log(1-U) with U in [0,1): argument stays in (0,1], no log(0).
    return -std::log1p(-uniform01()) / rate;
  }

  //! `count` distinct integers in [0, bound), in draw order. When count >=
  //! bound this is every value 0..bound-1 in ascending order.
  std::vector<std::uint32_t> distinct_below(std::uint32_t count, std::uint32_t bound) {
    std::vector<std::uint32_t> out;
    if (count >= bound) {
      out.resize(bound);
      for (std::uint32_t i = 0; i < bound; ++i) out[i] = i;
      return out;
    }
    out.reserve(count);
    while (out.size() < count) {
      auto v = static_cast<std::uint32_t>(below(bound));
      bool dup = false;
      for (std::uint32_t seen : out) {
        if (seen == v) {
          dup = true;
          break;
        }
      }
      if (!dup) out.push_back(v);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace evonet

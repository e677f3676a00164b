#include "evonet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>

namespace evonet {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr std::int64_t kDirectSummationLimit = 10000000;
constexpr double kSeriesCutoff = 1e-12;  // relative size at which k-sums stop

//! Prefix harmonic numbers H_0..H_n (H_0 = 0).
std::vector<double> harmonic_prefix(node_t n) {
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  h[0] = 0.0;
  for (node_t i = 1; i <= n; ++i) h[i] = h[i - 1] + 1.0 / i;
  return h;
}

//! Expected incoming links per join position: position i (1-based) ends up
//! with rate m * (H_n - H_max(m, i)); zero once the index reaches n.
std::vector<double> incoming_rates(node_t n, std::uint32_t m) {
  auto h = harmonic_prefix(n);
  std::vector<double> rates(n);
  for (node_t i = 1; i <= n; ++i) {
    std::uint64_t idx = std::max<std::uint64_t>(m, i);
    rates[i - 1] = idx >= n ? 0.0 : m * (h[n] - h[idx]);
  }
  return rates;
}

//! Sum over join positions of Poisson(k; rate), for k = 0..k_max. Uses the
//! multiplicative Poisson recurrence per position and falls back to
//! log-space terms when e^-rate underflows.
std::vector<double> poisson_mixture(const std::vector<double>& rates, std::uint32_t k_max) {
  std::vector<double> mix(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (double rate : rates) {
    if (rate == 0.0) {
      mix[0] += 1.0;
      continue;
    }
    double p = std::exp(-rate);
    if (p > 0.0) {
      for (std::uint32_t k = 0; k <= k_max; ++k) {
        mix[k] += p;
        p *= rate / (k + 1);
      }
    } else {
      double log_rate = std::log(rate);
      for (std::uint32_t k = 0; k <= k_max; ++k)
        mix[k] += std::exp(k * log_rate - rate - std::lgamma(k + 1.0));
    }
  }
  return mix;
}

//! Golden-section maximizer for smooth unimodal likelihoods.
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && b - a > 1e-12 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return (a + b) / 2;
}

//! Histogram entries with k >= 1, as parallel arrays.
struct TailSample {
  std::vector<std::uint32_t> ks;
  std::vector<double> counts;
  std::uint64_t observations = 0;
  std::uint32_t k_sup = 0;
};

TailSample tail_sample(const DegreeHistogram& hist) {
  TailSample t;
  for (auto [k, c] : hist.counts) {
    if (k == 0 || c == 0) continue;
    t.ks.push_back(k);
    t.counts.push_back(static_cast<double>(c));
    t.observations += c;
    t.k_sup = k;
  }
  if (t.observations == 0)
    throw ParameterError("distribution fit needs histogram mass at k >= 1");
  return t;
}

}  // namespace

void ModelParams::validate() const {
  if (n < 1) throw ParameterError("ModelParams: n must be at least 1");
  if (m < 1) throw ParameterError("ModelParams: m must be at least 1");
  if (k_max < 1) throw ParameterError("ModelParams: k_max must be at least 1");
}

double harmonic(std::int64_t n) {
  if (n < 1) throw ParameterError("harmonic: n must be at least 1");
  if (n > kDirectSummationLimit) return harmonic_asymptotic(n);
  double sum = 0.0;
  for (std::int64_t i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

double harmonic_asymptotic(std::int64_t n) {
  if (n < 1) throw ParameterError("harmonic_asymptotic: n must be at least 1");
  double x = static_cast<double>(n);
  return std::log(x) + kEulerGamma + 1.0 / (2.0 * x);
}

void DegreePmf::to_csv(std::ostream& out) const {
  out << "k,probability\n";
  char buf[64];
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.12g", probabilities[k]);
    out << k << ',' << buf << '\n';
  }
}

DegreePmf degree_pmf(const ModelParams& params) {
  params.validate();
  auto mix = poisson_mixture(incoming_rates(params.n, params.m), params.k_max);
  if (params.normalize)
    for (double& v : mix) v /= params.n;
  return {std::move(mix), params};
}

BranchingFactor branching_factor(const ModelParams& params) {
  params.validate();
  auto mix = poisson_mixture(incoming_rates(params.n, params.m), params.k_max);
  BranchingFactor out;
  out.truncated = true;
  for (std::uint32_t k = 1; k <= params.k_max; ++k) {
    double term = (static_cast<double>(k) + params.m) * mix[k] / params.n;
    out.value += term;
    out.terms = k;
    if (term <= kSeriesCutoff * out.value) {
      out.truncated = false;
      break;
    }
  }
  return out;
}

double diameter_analytic(const ModelParams& params) {
  params.validate();
  if (params.n <= 2ULL * params.m)
    throw DomainError("diameter_analytic: needs n > 2m, got n=" + std::to_string(params.n) +
                      " m=" + std::to_string(params.m));
  double psi = branching_factor(params).value;
  if (!(psi > 1.0))
    throw ModelError("diameter_analytic: branching factor " + std::to_string(psi) +
                     " is not above 1; the model is degenerate at this size");
  return std::log(static_cast<double>(params.n) - 2.0 * params.m) / std::log(psi) + 2.0;
}

double diameter_simplified(double n) { return diameter_simplified_m(n, 8); }

double diameter_simplified_m(double n, std::uint32_t m) {
  if (!(n >= 1.0)) throw ParameterError("diameter_simplified_m: n must be at least 1");
  if (m < 1) throw ParameterError("diameter_simplified_m: m must be at least 1");
  return 1.0 + std::log10(n) / std::log10(static_cast<double>(m) + 2.0);
}

double diameter_random(double n, double mean_degree) {
  if (!(n >= 1.0)) throw ParameterError("diameter_random: n must be at least 1");
  if (!(mean_degree > 1.0))
    throw ModelError("diameter_random: mean degree must exceed 1 for a finite diameter");
  return std::log(n) / std::log(mean_degree);
}

double total_variation(const DegreeHistogram& hist, const DegreePmf& pmf) {
  std::size_t support = std::max<std::size_t>(pmf.probabilities.size(),
                                              hist.counts.empty() ? 0 : hist.max_k() + 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < support; ++k) {
    double p = k < pmf.probabilities.size() ? pmf.probabilities[k] : 0.0;
    sum += std::abs(hist.fraction(static_cast<std::uint32_t>(k)) - p);
  }
  return 0.5 * sum;
}

PowerLawFit fit_power_law(const DegreeHistogram& hist) {
  auto t = tail_sample(hist);
  auto ll = [&](double alpha) {
    double z = 0.0;
    for (std::uint32_t j = 1; j <= t.k_sup; ++j) z += std::pow(j, -alpha);
    double s = 0.0;
    for (std::size_t i = 0; i < t.ks.size(); ++i) s -= alpha * t.counts[i] * std::log(t.ks[i]);
    return s - static_cast<double>(t.observations) * std::log(z);
  };
  PowerLawFit fit;
  fit.alpha = golden_max(ll, 0.05, 10.0);
  fit.log_likelihood = ll(fit.alpha);
  fit.observations = t.observations;
  return fit;
}

PoissonFit fit_poisson(const DegreeHistogram& hist) {
  auto t = tail_sample(hist);
  double mean = 0.0;
  for (std::size_t i = 0; i < t.ks.size(); ++i) mean += t.ks[i] * t.counts[i];
  mean /= static_cast<double>(t.observations);
  auto ll = [&](double rate) {
    // normalizer over the same truncated support as the power-law fit
    double z = 0.0, p = std::exp(-rate);
    for (std::uint32_t j = 1; j <= t.k_sup; ++j) {
      p *= rate / j;
      z += p;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < t.ks.size(); ++i)
      s += t.counts[i] *
           (t.ks[i] * std::log(rate) - rate - std::lgamma(static_cast<double>(t.ks[i]) + 1.0));
    return s - static_cast<double>(t.observations) * std::log(z);
  };
  PoissonFit fit;
  fit.rate = golden_max(ll, 1e-6, 2.0 * mean + 5.0);
  fit.log_likelihood = ll(fit.rate);
  fit.observations = t.observations;
  return fit;
}

double restricted_log_likelihood(const DegreeHistogram& hist, const DegreePmf& pmf) {
  auto t = tail_sample(hist);
  double z = 0.0;
  for (std::size_t k = 1; k < pmf.probabilities.size(); ++k) {
    if (k > t.k_sup) break;
    z += pmf.probabilities[k];
  }
  if (!(z > 0.0)) return -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t i = 0; i < t.ks.size(); ++i) {
    double p = t.ks[i] < pmf.probabilities.size() ? pmf.probabilities[t.ks[i]] / z : 0.0;
    s += t.counts[i] * std::log(p);
  }
  return s;
}

}  // namespace evonet

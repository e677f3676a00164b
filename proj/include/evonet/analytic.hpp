#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "evonet/errors.hpp"
#include "evonet/graph.hpp"

namespace evonet {

//! Closed-form model of an evolutionary-attachment network.
struct ModelParams {
  node_t n = 1000;          //!< network size
  std::uint32_t m = 8;      //!< outgoing links per joiner
  std::uint32_t k_max = 512;  //!< truncation bound for the infinite sums over k
  bool normalize = true;    //!< divide the mixture by n so entries form a pmf

  //! Throws ParameterError unless n >= 1, m >= 1, k_max >= 1. Formulas with
  //! a narrower domain (n > 2m) check that themselves.
  void validate() const;
};

//! n-th harmonic number: direct summation up to 10^7, asymptotic expansion
//! beyond. Throws ParameterError for n < 1.
double harmonic(std::int64_t n);

//! ln(n) + gamma + 1/(2n) tail expansion; exposed so tests can pin the
//! crossover against direct summation.
double harmonic_asymptotic(std::int64_t n);

//! Model distribution of incoming-link counts: a mixture of n Poisson pmfs,
//! one per join position.
struct DegreePmf {
  std::vector<double> probabilities;  //!< index k = 0..k_max
  ModelParams params;

  //! CSV rows `k,probability`.
  void to_csv(std::ostream& out) const;
};

DegreePmf degree_pmf(const ModelParams& params);

//! Per-hop reach multiplier of the model (the weighted mean of (k+m) over
//! the incoming-link distribution, k >= 1).
struct BranchingFactor {
  double value = 0.0;
  std::uint32_t terms = 0;  //!< number of k-terms accumulated
  bool truncated = false;   //!< the series was cut before it converged
};

BranchingFactor branching_factor(const ModelParams& params);

//! Model diameter ln(n - 2m)/ln(psi) + 2. Throws DomainError when
//! n <= 2m and ModelError when the branching factor is <= 1.
double diameter_analytic(const ModelParams& params);

//! Order-of-magnitude diameter 1 + log10(n), n >= 1.
double diameter_simplified(double n);

//! Link-budget-aware variant 1 + log_{m+2}(n); reduces exactly to
//! diameter_simplified at m = 8.
double diameter_simplified_m(double n, std::uint32_t m);

//! Classic random-graph diameter ln(n)/ln(mean_degree). Throws ModelError
//! when mean_degree <= 1.
double diameter_random(double n, double mean_degree);

//! Half the L1 distance between a histogram's fractions and a model pmf.
double total_variation(const DegreeHistogram& hist, const DegreePmf& pmf);

//! Discrete power law fitted on support k in [1, max observed k], by
//! maximum likelihood over the exponent.
struct PowerLawFit {
  double alpha = 0.0;
  double log_likelihood = 0.0;
  std::uint64_t observations = 0;  //!< histogram mass with k >= 1
};
PowerLawFit fit_power_law(const DegreeHistogram& hist);

//! Poisson fitted on the same restricted support, normalized over k >= 1.
struct PoissonFit {
  double rate = 0.0;
  double log_likelihood = 0.0;
  std::uint64_t observations = 0;
};
PoissonFit fit_poisson(const DegreeHistogram& hist);

//! Log-likelihood of the model pmf on the k >= 1 part of the histogram,
//! renormalized over that support so it is comparable with the fits above.
double restricted_log_likelihood(const DegreeHistogram& hist, const DegreePmf& pmf);

}  // namespace evonet

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "evonet/analytic.hpp"
#include "evonet/graph.hpp"

using namespace evonet;

namespace {

ModelParams make_params(node_t n, std::uint32_t m) {
  ModelParams params;
  params.n = n;
  params.m = m;
  return params;
}

}  // namespace

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(harmonic(2) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(harmonic(10) == doctest::Approx(2.928968253968254).epsilon(1e-14));
  CHECK(harmonic(1000) == doctest::Approx(7.485470860550343).epsilon(1e-14));
  CHECK(harmonic(1000000) == doctest::Approx(14.392726722864989).epsilon(1e-13));
  // The asymptotic tail agrees with direct summation where they meet.
  CHECK(harmonic_asymptotic(1000000) ==
        doctest::Approx(harmonic(1000000)).epsilon(1e-12));
  CHECK_THROWS_AS(harmonic(0), ParameterError);
  CHECK_THROWS_AS(harmonic(-3), ParameterError);
}

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(make_params(0, 8).validate(), ParameterError);
  CHECK_THROWS_AS(make_params(10, 0).validate(), ParameterError);
  ModelParams params = make_params(10, 2);
  params.k_max = 0;
  CHECK_THROWS_AS(params.validate(), ParameterError);
}

TEST_CASE("degree pmf matches the mixture anchors at n=1000, m=8") {
  DegreePmf pmf = degree_pmf(make_params(1000, 8));
  REQUIRE(pmf.probabilities.size() >= 65);
  CHECK(pmf.probabilities[0] == doctest::Approx(0.11166734357636629).epsilon(1e-12));
  CHECK(pmf.probabilities[1] == doctest::Approx(0.0988141593954761).epsilon(1e-12));
  CHECK(pmf.probabilities[8] == doctest::Approx(0.043326598614680974).epsilon(1e-12));

  double total = 0.0;
  for (double p : pmf.probabilities) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));

  // Unlike a pure Poisson(m), the mixture across join positions piles the
  // mass at zero incoming links.
  auto argmax = std::max_element(pmf.probabilities.begin(), pmf.probabilities.end());
  CHECK(argmax - pmf.probabilities.begin() == 0);

  double mean = 0.0;
  for (std::size_t k = 0; k < pmf.probabilities.size(); ++k) mean += k * pmf.probabilities[k];
  CHECK(mean == doctest::Approx(7.897859090258436).epsilon(1e-9));
}

TEST_CASE("degree pmf degenerates to a point mass for a lone node") {
  DegreePmf pmf = degree_pmf(make_params(1, 1));
  CHECK(pmf.probabilities[0] == doctest::Approx(1.0).epsilon(1e-12));
  double rest = 0.0;
  for (std::size_t k = 1; k < pmf.probabilities.size(); ++k) rest += pmf.probabilities[k];
  CHECK(rest == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unnormalized mixture scales by n") {
  ModelParams params = make_params(200, 5);
  DegreePmf pmf = degree_pmf(params);
  params.normalize = false;
  DegreePmf raw = degree_pmf(params);
  CHECK(raw.probabilities[0] ==
        doctest::Approx(200.0 * pmf.probabilities[0]).epsilon(1e-12));
  CHECK(raw.probabilities[5] ==
        doctest::Approx(200.0 * pmf.probabilities[5]).epsilon(1e-12));
}

TEST_CASE("degree pmf csv shape") {
  DegreePmf pmf = degree_pmf(make_params(50, 2));
  std::ostringstream out;
  pmf.to_csv(out);
  std::string text = out.str();
  CHECK(text.rfind("k,probability\n0,", 0) == 0);
}

TEST_CASE("branching factor anchors") {
  struct Anchor {
    node_t n;
    std::uint32_t m;
    double psi;
  };
  const Anchor anchors[] = {
      {100, 8, 14.228565973348612},  {1000, 8, 15.00452034164751},
      {10000, 8, 15.09861081337487}, {10000, 3, 5.24652620975206},
      {10000, 18, 35.0079574433797}, {1000, 1, 1.4917646408839906},
      {100000, 8, 15.109676883004653},
  };
  for (const Anchor& a : anchors) {
    BranchingFactor psi = branching_factor(make_params(a.n, a.m));
    CHECK(psi.value == doctest::Approx(a.psi).epsilon(1e-9));
    CHECK_FALSE(psi.truncated);
    CHECK(psi.terms > 0);
  }
}

TEST_CASE("branching factor below one flags a degenerate model") {
  BranchingFactor psi = branching_factor(make_params(2, 1));
  CHECK(psi.value == doctest::Approx(0.4467346701436833).epsilon(1e-9));
  CHECK(psi.value < 1.0);
}

TEST_CASE("analytic diameter anchors") {
  CHECK(diameter_analytic(make_params(100, 8)) ==
        doctest::Approx(3.6686993975328126).epsilon(1e-10));
  CHECK(diameter_analytic(make_params(1000, 8)) ==
        doctest::Approx(4.544583251838635).epsilon(1e-10));
  CHECK(diameter_analytic(make_params(10000, 8)) ==
        doctest::Approx(5.392297131844684).epsilon(1e-10));
  CHECK(diameter_analytic(make_params(10000, 3)) ==
        doctest::Approx(7.556182483012061).epsilon(1e-10));
  CHECK(diameter_analytic(make_params(10000, 18)) ==
        doctest::Approx(4.589379457186595).epsilon(1e-10));
  CHECK(diameter_analytic(make_params(100000, 8)) ==
        doctest::Approx(6.239905496457282).epsilon(1e-10));
}

TEST_CASE("analytic diameter domain errors") {
  CHECK_THROWS_AS(diameter_analytic(make_params(16, 8)), DomainError);
  CHECK_THROWS_AS(diameter_analytic(make_params(10, 8)), DomainError);
  CHECK_THROWS_AS(diameter_analytic(make_params(2, 1)), DomainError);  // n <= 2m first
  CHECK_THROWS_AS(diameter_analytic(make_params(3, 1)), ModelError);   // psi < 1
}

TEST_CASE("simplified diameters") {
  CHECK(diameter_simplified(1000) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(diameter_simplified(100000) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(diameter_simplified_m(10000, 3) ==
        doctest::Approx(6.722706232293573).epsilon(1e-12));
  CHECK(diameter_simplified_m(10000, 18) ==
        doctest::Approx(4.074487147360964).epsilon(1e-12));
  // m = 8 reduces to the factor-of-ten rule exactly (same code path).
  for (double n : {15.0, 100.0, 1234.5, 99999.0}) {
    CHECK(diameter_simplified_m(n, 8) == diameter_simplified(n));
  }
  CHECK_THROWS_AS(diameter_simplified(0.5), ParameterError);
}

TEST_CASE("classic random-graph diameter") {
  CHECK(diameter_random(1000, 10.0) ==
        doctest::Approx(std::log(1000.0) / std::log(10.0)).epsilon(1e-12));
  CHECK_THROWS_AS(diameter_random(1000, 1.0), ModelError);
  CHECK_THROWS_AS(diameter_random(1000, 0.5), ModelError);
  CHECK_THROWS_AS(diameter_random(0.5, 5.0), ParameterError);
}

TEST_CASE("total variation distance") {
  DegreePmf pmf = degree_pmf(make_params(200, 4));
  DegreeHistogram exact;
  // A histogram drawn exactly from the pmf (scaled to integer counts) has
  // near-zero distance; a point mass far away has distance near one.
  exact.total = 0;
  for (std::uint32_t k = 0; k < 40; ++k) {
    auto count = static_cast<std::uint64_t>(std::round(1e9 * pmf.probabilities[k]));
    if (count) {
      exact.counts[k] = count;
      exact.total += count;
    }
  }
  CHECK(total_variation(exact, pmf) < 1e-3);

  DegreeHistogram far;
  far.counts[400] = 10;
  far.total = 10;
  CHECK(total_variation(far, pmf) > 0.99);
}

TEST_CASE("power law beats poisson on power-law data and vice versa") {
  DegreeHistogram heavy;  // counts = floor(4000 / k^2), a discrete power law
  for (std::uint32_t k = 1; k < 64; ++k) {
    std::uint64_t c = 4000 / (k * k);
    if (c > 0) {
      heavy.counts[k] = c;
      heavy.total += c;
    }
  }
  PowerLawFit plaw = fit_power_law(heavy);
  PoissonFit pois = fit_poisson(heavy);
  CHECK(plaw.alpha == doctest::Approx(2.016547964268622).epsilon(1e-4));
  CHECK(plaw.log_likelihood > pois.log_likelihood);
  CHECK(plaw.observations == heavy.total);

  DegreeHistogram peaked;  // concentrated around 6, nothing like a power law
  peaked.counts[5] = 300;
  peaked.counts[6] = 400;
  peaked.counts[7] = 300;
  peaked.total = 1000;
  CHECK(fit_poisson(peaked).log_likelihood > fit_power_law(peaked).log_likelihood);
}

TEST_CASE("fits reject histograms with no positive-degree mass") {
  DegreeHistogram zeros;
  zeros.counts[0] = 10;
  zeros.total = 10;
  CHECK_THROWS_AS(fit_power_law(zeros), ParameterError);
  CHECK_THROWS_AS(fit_poisson(zeros), ParameterError);
  CHECK_THROWS_AS(restricted_log_likelihood(zeros, degree_pmf(make_params(100, 8))),
                  ParameterError);
}

TEST_CASE("restricted log likelihood prefers the generating model") {
  DegreePmf pmf = degree_pmf(make_params(300, 8));
  DegreeHistogram from_model;
  from_model.total = 0;
  for (std::uint32_t k = 0; k < 64; ++k) {
    auto count = static_cast<std::uint64_t>(std::round(1e6 * pmf.probabilities[k]));
    if (count) {
      from_model.counts[k] = count;
      from_model.total += count;
    }
  }
  double ll_model = restricted_log_likelihood(from_model, pmf);
  PowerLawFit plaw = fit_power_law(from_model);
  CHECK(ll_model > plaw.log_likelihood);
}

#include "evonet/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace evonet {

namespace {

constexpr double kSingularityGap = 1e-3;  // exclusion width around log10(n) = 1
constexpr double kSizeCap = 1e12;         // bisection bracket ceiling

double branch_floor(std::uint32_t m) {
  return std::max(2.0 * m, 10.0) + kSingularityGap;
}

//! exp(x) clamped into [lo, cap] so boundary evaluations can never round
//! into the excluded zone.
double size_at(double x, double lo) {
  return std::min(std::max(std::exp(x), lo), kSizeCap);
}

//! Start of the final growing branch of the balance curve. The curve is not
//! unimodal for every m (for 2m near the singularity it rises to a hump,
//! dips, then grows for good), so locate the last valley on a dense
//! log-spaced grid and refine it by golden section.
struct BranchStart {
  double n;
  bool curve_decreases_before;  //!< there is a falling stretch left of it
};

BranchStart final_branch_start(double lo, std::uint32_t m) {
  constexpr int kGridPoints = 4096;
  constexpr double inv_phi = 0.6180339887498949;
  double xa = std::log(lo), xb = std::log(kSizeCap);
  std::vector<double> value(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i)
    value[i] = equilibrium_lhs(size_at(xa + (xb - xa) * i / (kGridPoints - 1), lo), m);
  int start = kGridPoints - 1;
  while (start > 0 && value[start - 1] <= value[start]) --start;
  if (start == 0) return {lo, false};

  // Refine within the bracketing grid cells, where the curve is unimodal.
  double a = xa + (xb - xa) * (start - 1) / (kGridPoints - 1);
  double b = xa + (xb - xa) * std::min(start + 1, kGridPoints - 1) / (kGridPoints - 1);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = equilibrium_lhs(size_at(x1, lo), m);
  double f2 = equilibrium_lhs(size_at(x2, lo), m);
  for (int it = 0; it < 300 && b - a > 1e-13; ++it) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = equilibrium_lhs(size_at(x2, lo), m);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = equilibrium_lhs(size_at(x1, lo), m);
    }
  }
  return {size_at((a + b) / 2, lo), true};
}

}  // namespace

void EconParams::validate() const {
  if (!(profit_mining >= 0.0)) throw ParameterError("EconParams: profit_mining must be >= 0");
  if (!(cost_constant > 0.0)) throw ParameterError("EconParams: cost_constant must be positive");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ParameterError("EconParams: threshold must lie in (0, 1)");
  if (!(shd_ms > 0.0)) throw ParameterError("EconParams: shd_ms must be positive");
}

double cost_mining(const EconParams& ec, double mining_difficulty) {
  ec.validate();
  if (!(ec.computational_speed > 0.0))
    throw ParameterError("cost_mining: computational speed must be positive");
  if (!(mining_difficulty >= 0.0))
    throw ParameterError("cost_mining: difficulty must be >= 0");
  return ec.cost_constant * mining_difficulty / ec.computational_speed;
}

MinerBound max_miners_bound(const EconParams& ec, const ModelParams& params) {
  ec.validate();
  params.validate();
  if (params.n <= 2ULL * params.m)
    throw ModelError("max_miners_bound: needs n > 2m, got n=" + std::to_string(params.n) +
                     " m=" + std::to_string(params.m));
  double psi = branching_factor(params).value;
  if (!(psi > 1.0))
    throw ModelError("max_miners_bound: branching factor " + std::to_string(psi) +
                     " is not above 1");
  double d = std::log(static_cast<double>(params.n) - 2.0 * params.m) / std::log(psi) + 2.0;
  auto depth = static_cast<std::uint32_t>(std::floor(d));
  double exposure = 0.0, power = 1.0;
  for (std::uint32_t j = 1; j <= depth; ++j) {
    power *= psi;
    exposure += ec.shd_ms * power;
  }
  MinerBound bound;
  bound.rhs = ec.profit_mining / ec.cost_constant * -std::log1p(-ec.threshold) / exposure;
  bound.feasible = static_cast<double>(params.n) <= bound.rhs;
  return bound;
}

double equilibrium_lhs(double n, std::uint32_t m) {
  if (m < 1) throw ParameterError("equilibrium_lhs: m must be at least 1");
  if (!(n > 2.0 * m))
    throw DomainError("equilibrium_lhs: needs n > 2m, got n=" + std::to_string(n) +
                      " m=" + std::to_string(m));
  if (!(n >= 10.0 + kSingularityGap))
    throw DomainError("equilibrium_lhs: n=" + std::to_string(n) +
                      " is inside the singular zone around log10(n) = 1");
  double log10_n = std::log10(n);
  return n * (1.0 + log10_n) * std::exp(std::log(n - 2.0 * m) / (log10_n - 1.0));
}

EquilibriumSolution equilibrium_size(const EconParams& ec, std::uint32_t m) {
  ec.validate();
  if (m < 1) throw ParameterError("equilibrium_size: m must be at least 1");

  EquilibriumSolution sol;
  sol.rhs = -std::log1p(-ec.threshold) * ec.profit_mining / ec.cost_constant;

  double lo = branch_floor(m);
  auto branch = final_branch_start(lo, m);
  sol.branch_min_n = branch.n;
  sol.branch_min_value = equilibrium_lhs(sol.branch_min_n, m);
  // When the curve falls anywhere left of the final valley, discarded
  // crossings can exist below it; the solver always reports the growing one.
  sol.left_branch_exists = branch.curve_decreases_before;

  if (!(sol.rhs > 0.0) || sol.rhs < sol.branch_min_value)
    throw ModelError("no equilibrium: profit below viability floor (needs rhs >= " +
                     std::to_string(sol.branch_min_value) + ", got " +
                     std::to_string(sol.rhs) + ")");

  // The growing branch is monotone; verify on a coarse grid before trusting
  // bisection to bracket correctly.
  double cap_value = equilibrium_lhs(kSizeCap, m);
  {
    double prev = sol.branch_min_value;
    double a = std::log(sol.branch_min_n), b = std::log(kSizeCap);
    for (int i = 1; i <= 32; ++i) {
      double value = equilibrium_lhs(size_at(a + (b - a) * i / 32.0, lo), m);
      if (value < prev * (1.0 - 1e-9))
        throw ModelError("equilibrium_size: growing branch failed monotonicity scan");
      prev = value;
    }
  }
  if (sol.rhs > cap_value)
    throw ModelError("no equilibrium: target above the size cap of 1e12 nodes");

  double a = std::log(sol.branch_min_n), b = std::log(kSizeCap);
  while (b - a > 1e-15 * std::max(1.0, std::abs(b))) {
    double mid = (a + b) / 2;
    ++sol.iterations;
    if (equilibrium_lhs(size_at(mid, lo), m) < sol.rhs)
      a = mid;
    else
      b = mid;
  }
  sol.n_star = size_at((a + b) / 2, lo);
  sol.n_star_floor = static_cast<std::int64_t>(std::floor(sol.n_star));
  sol.residual_rel = std::abs(equilibrium_lhs(sol.n_star, m) - sol.rhs) / sol.rhs;
  return sol;
}

}  // namespace evonet

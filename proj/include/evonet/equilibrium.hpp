#pragma once

#include <cstdint>

#include "evonet/analytic.hpp"

namespace evonet {

//! Economic inputs for mining cost and network-size equilibrium.
struct EconParams {
  double profit_mining = 0.0;        //!< currency per mined block
  double cost_constant = 1.0;        //!< cost scale c (currency * speed / difficulty)
  double threshold = 0.05;           //!< fork-probability cap
  double shd_ms = 2000.0;            //!< single-hop delay
  double computational_speed = 1.0;  //!< per-miner hash rate

  //! Throws ParameterError unless profit_mining >= 0, cost_constant > 0,
  //! 0 < threshold < 1, shd_ms > 0.
  void validate() const;
};

//! Mining cost c * difficulty / speed. Throws ParameterError when
//! computational_speed <= 0 or difficulty < 0.
double cost_mining(const EconParams& ec, double mining_difficulty);

//! Feasibility bound on the miner count: the population is sustainable while
//! n stays at or below rhs.
struct MinerBound {
  double rhs = 0.0;
  bool feasible = false;
};

//! rhs = (profit/c) * (-ln(1 - threshold)) / sum_{j=1..floor(d)} shd * psi^j,
//! with d the model diameter; verdict compares params.n against it.
//! Domain violations (n <= 2m, psi <= 1) raise ModelError.
MinerBound max_miners_bound(const EconParams& ec, const ModelParams& params);

//! Left side of the zero-profit balance, as a function of real-valued
//! network size: n * (1 + log10 n) * e^{ln(n - 2m)/(log10 n - 1)}.
//! Throws DomainError for n <= 2m or for n below 10 + 1e-3, a guard strip
//! in front of the log10(n) = 1 singularity. Admitted points just past the
//! strip may still evaluate to +infinity: the balance genuinely diverges
//! there, and the solver treats such values as "above any finite target".
double equilibrium_lhs(double n, std::uint32_t m);

struct EquilibriumSolution {
  double n_star = 0.0;             //!< real-valued root
  std::int64_t n_star_floor = 0;   //!< reported integral size
  double rhs = 0.0;                //!< (-ln(1 - threshold) * profit) / c
  double residual_rel = 0.0;       //!< |lhs(n_star) - rhs| / rhs
  std::uint32_t iterations = 0;    //!< bisection steps
  double branch_min_n = 0.0;       //!< start of the increasing branch
  double branch_min_value = 0.0;   //!< lhs at that point (viability floor)
  //! True when the balance also diverges towards the left singularity
  //! (small m), i.e. a second, discarded crossing may exist below
  //! branch_min_n. The solver always reports the growing branch.
  bool left_branch_exists = false;
};

//! Solve equilibrium_lhs(n, m) = rhs for n by bisection on the increasing
//! branch right of the singularity, bracketed by [branch minimum, 1e12].
//! Throws ModelError when the target is below the viability floor or above
//! the bracket cap.
EquilibriumSolution equilibrium_size(const EconParams& ec, std::uint32_t m);

}  // namespace evonet

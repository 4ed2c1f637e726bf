#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surgeflow/execution.hpp"
#include "surgeflow/market.hpp"
#include "surgeflow/mass_vector.hpp"
#include "surgeflow/metric_space.hpp"
#include "surgeflow/transport.hpp"

namespace surgeflow {

/// How vertices without demand are priced: 0, 1, or C (the price a free item
/// at that vertex would give).
enum class ZeroDemandPrice { Zero, One, CMinusZero };

struct SurgeVector {
  std::vector<Rational> price;
  ZeroDemandPrice zero_demand = ZeroDemandPrice::Zero;
};

struct EquilibriumViolation {
  Vertex origin;
  Vertex flowed_to;
  Vertex better;
  Rational gap;
};

struct EquilibriumReport {
  std::vector<EquilibriumViolation> violations;
  std::string checked_edge_set;

  bool ok() const { return violations.empty(); }
};

/// Fraction of a taxicab's surge payment it expects at v: min(1, d_v/s'_v).
/// With no supply at v a lone arrival is served whenever d_v > 0, so the
/// fraction is 1 there, and 0 if d_v = 0 as well.
Rational serving_fraction(const Rational& new_supply, const Rational& demand);

/// Utility of a taxicab moving from u to v: r_v * serving_fraction - l(u,v).
Rational taxicab_utility(Vertex u, Vertex v, const MassVector& new_supply, const SurgeVector& r,
                         const MassVector& d, const MetricSpace& m);

/// Market with one bidder and one item per edge the flow uses; bidder (w,z)
/// values item (x,y) at C - l(w,y), C = max distance + 1.
struct FlowMarket {
  UnitDemandMarket market;
  std::vector<Edge> edges;  // bidder i and item i both come from edges[i]
  Rational c;
};

FlowMarket build_market_from_flow(const Flow& f, const MetricSpace& m);

struct ContinuousSurge {
  SurgeVector surge;
  FlowSolution solution;
  FlowMarket market;
  Matching matching;
  ClearingPrices prices;
};

/// Surge prices that make moving supply s onto demand d an equilibrium:
/// r_y = C - (price of any item ending at y) where d_y > 0. Throws
/// ContractViolation if items sharing a destination get different prices.
ContinuousSurge continuous_surge_prices(const MassVector& s, const MassVector& d, const MetricSpace& m,
                                        ZeroDemandPrice zero_demand = ZeroDemandPrice::Zero);

/// Checks that every edge usable by some min-cost flow from s to new_supply
/// is a best response for the taxicabs at its origin.
EquilibriumReport verify_equilibrium_continuous(const MassVector& s, const MassVector& new_supply,
                                                const SurgeVector& r, const MassVector& d, const MetricSpace& m);

struct UniqueInductionReport {
  bool target_accepted = false;
  std::vector<char> candidate_rejected;

  bool ok() const;
};

/// Confirms (s, d, r) is an equilibrium with new supply d and that none of
/// the candidate supplies is. Throws InputError if a candidate equals d.
UniqueInductionReport verify_unique_induction(const MassVector& s, const MassVector& d, const SurgeVector& r,
                                              const MetricSpace& m, const std::vector<MassVector>& candidates,
                                              Execution exec = Execution::Parallel);

/// `count` random supplies differing from d, each scaling the positive
/// entries of d by independent factors in [1/2, 3/2] and renormalizing.
std::vector<MassVector> perturbed_supplies(const MassVector& d, std::size_t count, std::uint64_t seed);

struct TargetSurge {
  SurgeVector surge;
  EquilibriumReport equilibrium;
};

/// Prices inducing supply alpha: r_i scaled by max(1, alpha_i/d_i).
/// Throws InputError if alpha_i > 0 where d_i = 0.
TargetSurge target_supply_surge(const MassVector& s, const MassVector& d, const MassVector& alpha,
                                const MetricSpace& m);

}  // namespace surgeflow

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surgeflow/execution.hpp"
#include "surgeflow/market.hpp"
#include "surgeflow/metric_space.hpp"
#include "surgeflow/report.hpp"

namespace surgeflow {

struct Passenger {
  std::string id;
  Vertex location;
  Rational value;
};

struct Taxicab {
  std::string id;
  Vertex location;
};

/// Atomic passengers and taxicabs on a metric.
class DiscreteInstance {
 public:
  DiscreteInstance(MetricSpace metric, std::vector<Passenger> passengers, std::vector<Taxicab> taxicabs);

  const MetricSpace& metric() const { return metric_; }
  const std::vector<Passenger>& passengers() const { return passengers_; }
  const std::vector<Taxicab>& taxicabs() const { return taxicabs_; }

  /// Distance between passenger i and taxicab j.
  const Rational& pickup_distance(std::size_t i, std::size_t j) const;

  DiscreteInstance with_value(std::size_t passenger, const Rational& value) const;

 private:
  MetricSpace metric_;
  std::vector<Passenger> passengers_;
  std::vector<Taxicab> taxicabs_;
};

struct DiscreteAssignment {
  std::vector<std::optional<std::size_t>> passenger_of;  // per taxicab
  std::vector<std::vector<long>> induced_flow;           // taxicab counts moved u -> v
  std::vector<long> new_supply;
};

/// Per-vertex surge; nullopt when there are no taxicabs at all.
struct DiscreteSurgeVector {
  std::vector<std::optional<Rational>> price;
};

struct DiscreteSolution {
  DiscreteAssignment assignment;
  ClearingPrices taxi_prices;
  DiscreteSurgeVector surge;
  Rational welfare;
};

/// Bidders are passengers, items are taxicabs, value = passenger value minus
/// pickup distance.
UnitDemandMarket build_discrete_market(const DiscreteInstance& inst);

/// Welfare-maximizing assignment with minimal Walrasian taxi prices; each
/// vertex's surge is the cheapest distance-plus-price over taxicabs. Ties
/// favour passengers listed earlier.
DiscreteSolution solve_discrete(const DiscreteInstance& inst);

/// Builds the induced flow and new supply of a taxi -> passenger map.
DiscreteAssignment make_assignment(const DiscreteInstance& inst, std::vector<std::optional<std::size_t>> passenger_of);

/// Served values minus the earthmover cost from old to new taxi counts.
Rational social_welfare_discrete(const DiscreteInstance& inst, const DiscreteAssignment& a);

/// Unserved passengers value at most the surge at their vertex; served ones at
/// least that much.
CheckReport verify_envy_free(const DiscreteInstance& inst, const DiscreteAssignment& a, const DiscreteSurgeVector& r);

/// Each taxicab's profit (its price if assigned, else 0) is at least
/// r_w - l(w, its location) for every vertex w.
CheckReport verify_taxi_best_response(const DiscreteInstance& inst, const DiscreteAssignment& a,
                                      const ClearingPrices& p, const DiscreteSurgeVector& r);

/// Every served pair attains the minimum defining the surge at the
/// passenger's vertex: pickup distance + taxi price = r.
CheckReport verify_achieves_min(const DiscreteInstance& inst, const DiscreteAssignment& a, const ClearingPrices& p,
                                const DiscreteSurgeVector& r);

/// Re-solves with each passenger's value replaced by each grid entry and
/// reports every misreport that strictly raises that passenger's true
/// utility (value - surge if served, else 0). At most 5 passengers.
CheckReport verify_truthful(const DiscreteInstance& inst, const std::vector<Rational>& misreport_grid,
                            Execution exec = Execution::Parallel);

/// Exhaustive maximum of served value minus pickup distance over all
/// injective passenger -> taxicab maps.
Rational brute_force_discrete_welfare(const DiscreteInstance& inst);

}  // namespace surgeflow

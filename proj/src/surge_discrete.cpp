#include "surgeflow/surge_discrete.hpp"

#include <exception>
#include <functional>
#include <set>

#include "surgeflow/errors.hpp"
#include "surgeflow/transport.hpp"

namespace surgeflow {
namespace {

MassVector normalized(const std::vector<long>& counts, long total) {
  std::vector<Rational> m(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    m[i] = Rational(counts[i], total);
    m[i].canonicalize();
  }
  return MassVector(std::move(m));
}

std::vector<long> old_supply(const DiscreteInstance& inst) {
  std::vector<long> out(inst.metric().size(), 0);
  for (const auto& t : inst.taxicabs()) out[t.location]++;
  return out;
}

std::string describe(const std::optional<Rational>& r) { return r ? to_string(*r) : "unbounded"; }

}  // namespace

DiscreteInstance::DiscreteInstance(MetricSpace metric, std::vector<Passenger> passengers,
                                   std::vector<Taxicab> taxicabs)
    : metric_(std::move(metric)), passengers_(std::move(passengers)), taxicabs_(std::move(taxicabs)) {
  std::set<std::string> ids;
  for (const auto& p : passengers_) {
    if (p.location >= metric_.size()) throw InputError("passenger " + p.id + " has an unknown location");
    if (p.value < 0) throw InputError("passenger " + p.id + " has a negative value");
    if (!ids.insert(p.id).second) throw InputError("duplicate passenger id " + p.id);
  }
  ids.clear();
  for (const auto& t : taxicabs_) {
    if (t.location >= metric_.size()) throw InputError("taxicab " + t.id + " has an unknown location");
    if (!ids.insert(t.id).second) throw InputError("duplicate taxicab id " + t.id);
  }
}

const Rational& DiscreteInstance::pickup_distance(std::size_t i, std::size_t j) const {
  return metric_.distance(passengers_[i].location, taxicabs_[j].location);
}

DiscreteInstance DiscreteInstance::with_value(std::size_t passenger, const Rational& value) const {
  auto ps = passengers_;
  ps.at(passenger).value = value;
  return DiscreteInstance(metric_, std::move(ps), taxicabs_);
}

UnitDemandMarket build_discrete_market(const DiscreteInstance& inst) {
  std::vector<std::string> bidders, items;
  for (const auto& p : inst.passengers()) bidders.push_back(p.id);
  for (const auto& t : inst.taxicabs()) items.push_back(t.id);
  std::vector<std::vector<Rational>> val(bidders.size(), std::vector<Rational>(items.size()));
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    for (std::size_t j = 0; j < items.size(); ++j) val[i][j] = inst.passengers()[i].value - inst.pickup_distance(i, j);
  }
  return UnitDemandMarket(std::move(bidders), std::move(items), std::move(val));
}

DiscreteAssignment make_assignment(const DiscreteInstance& inst, std::vector<std::optional<std::size_t>> passenger_of) {
  const std::size_t k = inst.metric().size();
  if (passenger_of.size() != inst.taxicabs().size()) throw InputError("assignment size differs from taxicab count");
  std::vector<char> served(inst.passengers().size(), 0);
  DiscreteAssignment a;
  a.induced_flow.assign(k, std::vector<long>(k, 0));
  a.new_supply.assign(k, 0);
  for (std::size_t j = 0; j < passenger_of.size(); ++j) {
    Vertex from = inst.taxicabs()[j].location;
    Vertex to = from;
    if (passenger_of[j]) {
      if (*passenger_of[j] >= inst.passengers().size()) throw InputError("assignment refers to unknown passenger");
      if (served[*passenger_of[j]]) throw InputError("passenger served twice");
      served[*passenger_of[j]] = 1;
      to = inst.passengers()[*passenger_of[j]].location;
    }
    a.induced_flow[from][to]++;
    a.new_supply[to]++;
  }
  a.passenger_of = std::move(passenger_of);
  return a;
}

DiscreteSolution solve_discrete(const DiscreteInstance& inst) {
  auto mkt = build_discrete_market(inst);
  auto g = max_weight_matching(mkt);
  DiscreteSolution out;
  out.taxi_prices = minimal_walrasian_prices(mkt, g);
  std::vector<std::optional<std::size_t>> passenger_of(inst.taxicabs().size());
  for (std::size_t i = 0; i < g.item_of.size(); ++i) {
    if (g.item_of[i]) passenger_of[*g.item_of[i]] = i;
  }
  out.assignment = make_assignment(inst, std::move(passenger_of));
  const auto& m = inst.metric();
  out.surge.price.assign(m.size(), std::nullopt);
  for (Vertex v = 0; v < m.size(); ++v) {
    for (std::size_t j = 0; j < inst.taxicabs().size(); ++j) {
      Rational cand = m.distance(inst.taxicabs()[j].location, v) + out.taxi_prices.price[j];
      auto& slot = out.surge.price[v];
      if (!slot || cand < *slot) slot = cand;
    }
  }
  out.welfare = social_welfare_discrete(inst, out.assignment);
  return out;
}

Rational social_welfare_discrete(const DiscreteInstance& inst, const DiscreteAssignment& a) {
  Rational total = 0;
  for (const auto& p : a.passenger_of) {
    if (p) total += inst.passengers()[*p].value;
  }
  const long n = static_cast<long>(inst.taxicabs().size());
  if (n == 0) return total;
  Rational moved = earthmover(normalized(old_supply(inst), n), normalized(a.new_supply, n), inst.metric());
  return total - moved * n;
}

CheckReport verify_envy_free(const DiscreteInstance& inst, const DiscreteAssignment& a, const DiscreteSurgeVector& r) {
  CheckReport report;
  std::vector<char> served(inst.passengers().size(), 0);
  for (const auto& p : a.passenger_of) {
    if (p) served[*p] = 1;
  }
  for (std::size_t i = 0; i < inst.passengers().size(); ++i) {
    const auto& p = inst.passengers()[i];
    const auto& price = r.price.at(p.location);
    if (served[i]) {
      if (!price || p.value < *price) {
        report.fail("served passenger " + p.id + " values " + to_string(p.value) + " below surge " + describe(price));
      }
    } else if (price && p.value > *price) {
      report.fail("unserved passenger " + p.id + " values " + to_string(p.value) + " above surge " + to_string(*price));
    }
  }
  return report;
}

CheckReport verify_taxi_best_response(const DiscreteInstance& inst, const DiscreteAssignment& a,
                                      const ClearingPrices& p, const DiscreteSurgeVector& r) {
  CheckReport report;
  const auto& m = inst.metric();
  for (std::size_t j = 0; j < inst.taxicabs().size(); ++j) {
    Rational profit = a.passenger_of[j] ? p.price.at(j) : Rational(0);
    for (Vertex w = 0; w < m.size(); ++w) {
      if (!r.price[w]) continue;
      Rational alt = *r.price[w] - m.distance(w, inst.taxicabs()[j].location);
      if (alt > profit) {
        report.fail("taxicab " + inst.taxicabs()[j].id + " earns " + to_string(profit) + " but could earn " +
                    to_string(alt) + " at " + m.label(w));
      }
    }
  }
  return report;
}

CheckReport verify_achieves_min(const DiscreteInstance& inst, const DiscreteAssignment& a, const ClearingPrices& p,
                                const DiscreteSurgeVector& r) {
  CheckReport report;
  for (std::size_t j = 0; j < a.passenger_of.size(); ++j) {
    if (!a.passenger_of[j]) continue;
    std::size_t i = *a.passenger_of[j];
    const auto& price = r.price.at(inst.passengers()[i].location);
    Rational paid = inst.pickup_distance(i, j) + p.price.at(j);
    if (!price || paid != *price) {
      report.fail("passenger " + inst.passengers()[i].id + " served by " + inst.taxicabs()[j].id + " at " +
                  to_string(paid) + ", surge is " + describe(price));
    }
  }
  return report;
}

CheckReport verify_truthful(const DiscreteInstance& inst, const std::vector<Rational>& misreport_grid,
                            Execution exec) {
  if (misreport_grid.empty()) throw InputError("misreport grid is empty");
  const std::size_t n = inst.passengers().size();
  if (n > 5) throw SizeLimitError("truthfulness enumeration handles at most 5 passengers");

  // True utility of passenger i under a solution.
  auto utility = [&](const DiscreteSolution& sol, std::size_t i) -> Rational {
    for (const auto& p : sol.assignment.passenger_of) {
      if (p == i) {
        const auto& passenger = inst.passengers()[i];
        return passenger.value - *sol.surge.price[passenger.location];
      }
    }
    return 0;
  };
  auto truth = solve_discrete(inst);
  std::vector<Rational> honest(n);
  for (std::size_t i = 0; i < n; ++i) honest[i] = utility(truth, i);

  const std::size_t g = misreport_grid.size();
  const auto total = static_cast<std::ptrdiff_t>(n * g);
  std::vector<std::string> found(n * g);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / g;
    const Rational& report = misreport_grid[static_cast<std::size_t>(idx) % g];
    try {
      if (report < 0) continue;
      Rational u = utility(solve_discrete(inst.with_value(i, report)), i);
      if (u > honest[i]) {
        found[idx] = "passenger " + inst.passengers()[i].id + " gains " + to_string(u - honest[i]) + " by reporting " +
                     to_string(report);
      }
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  CheckReport out;
  for (auto& msg : found) {
    if (!msg.empty()) out.fail(std::move(msg));
  }
  return out;
}

Rational brute_force_discrete_welfare(const DiscreteInstance& inst) {
  const std::size_t n = inst.passengers().size();
  const std::size_t t = inst.taxicabs().size();
  std::vector<char> used(t, 0);
  Rational best = 0, acc = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (acc > best) best = acc;
      return;
    }
    rec(i + 1);
    for (std::size_t j = 0; j < t; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      Rational gain = inst.passengers()[i].value - inst.pickup_distance(i, j);
      acc += gain;
      rec(i + 1);
      acc -= gain;
      used[j] = 0;
    }
  };
  rec(0);
  return best;
}

}  // namespace surgeflow

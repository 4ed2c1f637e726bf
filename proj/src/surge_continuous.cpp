#include "surgeflow/surge_continuous.hpp"

#include <exception>
#include <map>
#include <random>

#include "surgeflow/errors.hpp"

namespace surgeflow {
namespace {

std::string edge_id(const MetricSpace& m, const Edge& e) {
  return "(" + m.label(e.first) + "," + m.label(e.second) + ")";
}

Rational zero_demand_value(ZeroDemandPrice rule, const Rational& c) {
  switch (rule) {
    case ZeroDemandPrice::Zero:
      return 0;
    case ZeroDemandPrice::One:
      return 1;
    case ZeroDemandPrice::CMinusZero:
      return c;
  }
  return 0;
}

}  // namespace

Rational serving_fraction(const Rational& new_supply, const Rational& demand) {
  if (new_supply == 0) return demand > 0 ? Rational(1) : Rational(0);
  if (demand >= new_supply) return 1;
  return demand / new_supply;
}

Rational taxicab_utility(Vertex u, Vertex v, const MassVector& new_supply, const SurgeVector& r,
                         const MassVector& d, const MetricSpace& m) {
  return r.price[v] * serving_fraction(new_supply[v], d[v]) - m.distance(u, v);
}

FlowMarket build_market_from_flow(const Flow& f, const MetricSpace& m) {
  if (f.entries().empty()) throw InputError("cannot build a market from an empty flow");
  FlowMarket out;
  out.c = m.max_distance() + 1;
  out.edges = f.support();
  std::vector<std::string> bidders, items;
  std::vector<std::vector<Rational>> val(out.edges.size(), std::vector<Rational>(out.edges.size()));
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    bidders.push_back("b" + edge_id(m, out.edges[i]));
    items.push_back("m" + edge_id(m, out.edges[i]));
    for (std::size_t j = 0; j < out.edges.size(); ++j) {
      val[i][j] = out.c - m.distance(out.edges[i].first, out.edges[j].second);
    }
  }
  out.market = UnitDemandMarket(std::move(bidders), std::move(items), std::move(val));
  return out;
}

ContinuousSurge continuous_surge_prices(const MassVector& s, const MassVector& d, const MetricSpace& m,
                                        ZeroDemandPrice zero_demand) {
  auto solution = min_cost_flow(s, d, m);
  auto fm = build_market_from_flow(solution.flow, m);
  Matching diagonal;
  for (std::size_t i = 0; i < fm.edges.size(); ++i) diagonal.item_of.push_back(i);
  if (matching_welfare(fm.market, diagonal) != matching_welfare(fm.market, max_weight_matching(fm.market))) {
    throw ContractViolation("edge-to-own-item matching does not maximize welfare");
  }
  auto prices = minimal_walrasian_prices(fm.market, diagonal);

  std::vector<std::optional<Rational>> at_destination(m.size());
  for (std::size_t i = 0; i < fm.edges.size(); ++i) {
    auto& slot = at_destination[fm.edges[i].second];
    if (!slot) {
      slot = prices.price[i];
    } else if (*slot != prices.price[i]) {
      throw ContractViolation("items ending at " + m.label(fm.edges[i].second) + " have different prices");
    }
  }
  SurgeVector r;
  r.zero_demand = zero_demand;
  r.price.resize(m.size());
  for (Vertex y = 0; y < m.size(); ++y) {
    if (d[y] > 0) {
      r.price[y] = fm.c - *at_destination[y];
    } else {
      r.price[y] = zero_demand_value(zero_demand, fm.c);
    }
  }
  return {std::move(r), std::move(solution), std::move(fm), std::move(diagonal), std::move(prices)};
}

EquilibriumReport verify_equilibrium_continuous(const MassVector& s, const MassVector& new_supply,
                                                const SurgeVector& r, const MassVector& d, const MetricSpace& m) {
  const std::size_t k = m.size();
  require_dimension(s, k, "supply");
  require_dimension(new_supply, k, "new supply");
  require_dimension(d, k, "demand");
  if (r.price.size() != k) throw InputError("surge vector has wrong length");
  auto sol = min_cost_flow(s, new_supply, m);
  auto edges = optimal_support_edges(sol.flow, sol.duals, m);

  std::vector<Rational> best(k);
  std::vector<Vertex> best_at(k, k);
  for (Vertex u = 0; u < k; ++u) {
    if (s[u] == 0) continue;
    for (Vertex w = 0; w < k; ++w) {
      Rational mu = taxicab_utility(u, w, new_supply, r, d, m);
      if (best_at[u] == k || mu > best[u]) {
        best[u] = mu;
        best_at[u] = w;
      }
    }
  }
  EquilibriumReport report;
  for (const auto& [u, v] : edges) {
    Rational mu = taxicab_utility(u, v, new_supply, r, d, m);
    if (mu < best[u]) report.violations.push_back({u, v, best_at[u], best[u] - mu});
  }
  report.checked_edge_set = std::to_string(edges.size()) + " edges usable by some min-cost flow (of " +
                            std::to_string(zero_reduced_cost_edges(sol.duals, m).size()) +
                            " zero-reduced-cost edges)";
  return report;
}

bool UniqueInductionReport::ok() const {
  if (!target_accepted) return false;
  for (char c : candidate_rejected) {
    if (!c) return false;
  }
  return true;
}

UniqueInductionReport verify_unique_induction(const MassVector& s, const MassVector& d, const SurgeVector& r,
                                              const MetricSpace& m, const std::vector<MassVector>& candidates,
                                              Execution exec) {
  for (const auto& c : candidates) {
    require_dimension(c, m.size(), "candidate supply");
    if (c == d) throw InputError("candidate supply equals the demand");
  }
  UniqueInductionReport report;
  report.target_accepted = verify_equilibrium_continuous(s, d, r, d, m).ok();
  report.candidate_rejected.assign(candidates.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      report.candidate_rejected[i] = !verify_equilibrium_continuous(s, candidates[i], r, d, m).ok();
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

std::vector<MassVector> perturbed_supplies(const MassVector& d, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(12, 36);
  std::vector<MassVector> out;
  std::size_t positive = 0;
  for (const auto& x : d) positive += x > 0;
  // A single positive entry renormalizes back to d every time.
  if (positive < 2) throw InputError("demand needs two positive entries to perturb");
  while (out.size() < count) {
    std::vector<Rational> raw(d.size());
    Rational total = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      Rational factor(step(rng), 24);
      factor.canonicalize();
      raw[i] = d[i] * factor;
      total += raw[i];
    }
    for (auto& x : raw) x /= total;
    MassVector cand(std::move(raw));
    if (!(cand == d)) out.push_back(std::move(cand));
  }
  return out;
}

TargetSurge target_supply_surge(const MassVector& s, const MassVector& d, const MassVector& alpha,
                                const MetricSpace& m) {
  require_dimension(alpha, m.size(), "target supply");
  for (Vertex i = 0; i < m.size(); ++i) {
    if (alpha[i] > 0 && d[i] == 0) {
      throw InputError("target supply is positive at " + m.label(i) + " where demand is zero");
    }
  }
  TargetSurge out;
  out.surge = continuous_surge_prices(s, d, m).surge;
  for (Vertex i = 0; i < m.size(); ++i) {
    if (alpha[i] > d[i]) out.surge.price[i] *= alpha[i] / d[i];
  }
  out.equilibrium = verify_equilibrium_continuous(s, alpha, out.surge, d, m);
  return out;
}

}  // namespace surgeflow

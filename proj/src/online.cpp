#include "surgeflow/online.hpp"

#include <algorithm>

#include "surgeflow/errors.hpp"

namespace surgeflow {
namespace {

std::vector<SharedMass> share_all(const std::vector<MassVector>& steps) {
  std::vector<SharedMass> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(std::make_shared<const MassVector>(s));
  return out;
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability must lie in [0, 1]");
}

}  // namespace

DemandSequence::DemandSequence(MetricSpace metric, std::vector<SharedMass> steps)
    : metric_(std::move(metric)), steps_(std::move(steps)) {
  if (steps_.empty()) throw InputError("demand sequence has no steps");
  for (const auto& s : steps_) {
    if (!s) throw InputError("demand sequence has a missing step");
    require_dimension(*s, metric_.size(), "demand step");
  }
}

DemandSequence::DemandSequence(MetricSpace metric, const std::vector<MassVector>& steps)
    : DemandSequence(std::move(metric), share_all(steps)) {}

Rational movement_cost(const MassVector& a, const MassVector& b, const MetricSpace& m) {
  if (&a == &b) return 0;
  if (const auto& c = m.uniform_length()) return *c * total_variation(a, b);
  return earthmover(a, b, m);
}

SupplyTrajectory::SupplyTrajectory(std::vector<SharedMass> steps, const DemandSequence& d) : steps_(std::move(steps)) {
  if (steps_.size() != d.length()) throw InputError("supply and demand sequences differ in length");
  const auto& m = d.metric();
  served_.resize(steps_.size());
  moved_.resize(steps_.size());
  total_sw_ = 0;
  for (std::size_t t = 0; t < steps_.size(); ++t) {
    if (!steps_[t]) throw InputError("supply sequence has a missing step");
    require_dimension(*steps_[t], m.size(), "supply step");
    served_[t] = demand_served(*steps_[t], d[t]);
    if (t > 0 && steps_[t] != steps_[t - 1]) moved_[t] = movement_cost(*steps_[t - 1], *steps_[t], m);
    total_sw_ += served_[t] - moved_[t];
  }
}

Flow SupplyTrajectory::flow(std::size_t t, const MetricSpace& m) const {
  if (t == 0 || t >= steps_.size()) throw InputError("flows exist only between consecutive steps");
  return min_cost_flow(*steps_[t - 1], *steps_[t], m).flow;
}

SequenceStats sequence_stats(const DemandSequence& d) {
  Rational peak = 0, drift = 0;
  for (std::size_t t = 0; t < d.length(); ++t) {
    for (const auto& x : d[t]) {
      if (x > peak) peak = x;
    }
    if (t > 0 && d.shared(t) != d.shared(t - 1)) drift += total_variation(d[t - 1], d[t]);
  }
  return {1 / peak, drift / static_cast<unsigned long>(d.length()), d.metric().max_distance()};
}

SupplyTrajectory run_stay(const DemandSequence& d) {
  auto uniform = std::make_shared<const MassVector>(MassVector::uniform(d.metric().size()));
  return SupplyTrajectory(std::vector<SharedMass>(d.length(), uniform), d);
}

SupplyTrajectory run_match(const DemandSequence& d) {
  std::vector<SharedMass> steps(d.length());
  for (std::size_t t = 0; t < d.length(); ++t) steps[t] = d.shared(t);
  return SupplyTrajectory(std::move(steps), d);
}

SupplyTrajectory run_rand(const DemandSequence& d, double p, Rng& rng) {
  check_probability(p);
  std::bernoulli_distribution jump(p);
  std::vector<SharedMass> steps(d.length());
  steps[0] = d.shared(0);
  for (std::size_t t = 1; t < d.length(); ++t) steps[t] = jump(rng) ? d.shared(t) : steps[t - 1];
  return SupplyTrajectory(std::move(steps), d);
}

SupplyTrajectory run_rand(const DemandSequence& d, double p, std::uint64_t seed) {
  Rng rng(seed);
  return run_rand(d, p, rng);
}

CompOutcome run_comp(const DemandSequence& d, double p, Rng& rng) {
  check_probability(p);
  const bool stay = std::bernoulli_distribution(0.5)(rng);
  if (stay) return {true, run_stay(d)};
  return {false, run_rand(d, p, rng)};
}

CompOutcome run_comp(const DemandSequence& d, double p, std::uint64_t seed) {
  Rng rng(seed);
  return run_comp(d, p, rng);
}

SurgeVector surge_prices_for_step(const MassVector& target, const MassVector& s_prev, const MassVector& d_t,
                                  const MetricSpace& m, ZeroDemandPrice zero_demand) {
  require_dimension(target, m.size(), "target supply");
  if (target == d_t) return continuous_surge_prices(s_prev, d_t, m, zero_demand).surge;
  if (!(target == s_prev)) throw InputError("step target must be the demand or the previous supply");
  if (!m.unit_min()) throw UnsupportedError("holding supply in place needs every distance to be at least 1");
  SurgeVector r;
  r.price.assign(m.size(), Rational(1));
  r.zero_demand = ZeroDemandPrice::One;
  auto report = verify_equilibrium_continuous(s_prev, s_prev, r, d_t, m);
  if (!report.ok()) throw ContractViolation("unit surge prices do not hold supply in place");
  return r;
}

Rational LazyDiagnostics::max_window_z_sum() const {
  const std::size_t T = z.size();
  std::vector<Rational> per_step(T, Rational(0));
  for (std::size_t t = 0; t < T; ++t) {
    for (const auto& x : z[t]) per_step[t] += x;
  }
  // Windows [t - n, t) for t = 1..T+1, clipped at the first step.
  Rational best = 0, running = 0;
  for (std::size_t end = 0; end < T; ++end) {
    running += per_step[end];
    if (end >= window) running -= per_step[end - window];
    if (running > best) best = running;
  }
  return best;
}

Rational LazyDiagnostics::h_total() const {
  Rational total = 0;
  for (const auto& row : h) {
    for (const auto& x : row) total += x;
  }
  return total;
}

LazyDiagnostics lazy_diagnostics(const SupplyTrajectory& s, const DemandSequence& d, std::size_t window) {
  if (window == 0) throw InputError("window must be positive");
  if (s.length() != d.length()) throw InputError("supply and demand sequences differ in length");
  const std::size_t T = d.length(), k = d.metric().size();
  LazyDiagnostics out;
  out.window = window;
  out.h.assign(T, std::vector<Rational>(k));
  out.g.assign(T, std::vector<Rational>(k));
  out.z.assign(T, std::vector<Rational>(k));
  for (std::size_t t = 0; t < T; ++t) {
    const MassVector& prev = s[t == 0 ? 0 : t - 1];
    for (Vertex i = 0; i < k; ++i) {
      out.h[t][i] = min_of(prev[i], d[t][i]);
      Rational g = 0;
      for (std::size_t tau = t >= window ? t - window : 0; tau < t; ++tau) g = max_of(g, d[tau][i]);
      out.g[t][i] = g;
      out.z[t][i] = out.h[t][i] > g ? Rational(out.h[t][i] - g) : Rational(0);
    }
  }
  return out;
}

}  // namespace surgeflow

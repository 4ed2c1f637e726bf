#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "surgeflow/mass_vector.hpp"
#include "surgeflow/metric_space.hpp"
#include "surgeflow/report.hpp"
#include "surgeflow/surge_continuous.hpp"
#include "surgeflow/transport.hpp"

namespace surgeflow {

using Rng = std::mt19937_64;
using SharedMass = std::shared_ptr<const MassVector>;

/// Demand vectors d^1..d^T on a metric. Steps are shared so trajectories
/// that copy demand (MATCH, RAND) do not duplicate storage.
class DemandSequence {
 public:
  DemandSequence(MetricSpace metric, std::vector<SharedMass> steps);
  DemandSequence(MetricSpace metric, const std::vector<MassVector>& steps);

  const MetricSpace& metric() const { return metric_; }
  std::size_t length() const { return steps_.size(); }
  const MassVector& operator[](std::size_t t) const { return *steps_[t]; }
  const SharedMass& shared(std::size_t t) const { return steps_[t]; }

 private:
  MetricSpace metric_;
  std::vector<SharedMass> steps_;
};

/// Movement cost of turning supply a into supply b. Uses c * TV on uniform
/// metrics and the transport solver otherwise.
Rational movement_cost(const MassVector& a, const MassVector& b, const MetricSpace& m);

/// Supply vectors s^1..s^T with per-step accounting against a demand sequence.
/// Step indices are 0-based; moved(0) is always 0 because the first supply is
/// placed for free. Flows between steps are recomputed on request.
class SupplyTrajectory {
 public:
  SupplyTrajectory(std::vector<SharedMass> steps, const DemandSequence& d);

  std::size_t length() const { return steps_.size(); }
  const MassVector& operator[](std::size_t t) const { return *steps_[t]; }
  const SharedMass& shared(std::size_t t) const { return steps_[t]; }
  const std::vector<Rational>& served() const { return served_; }
  const std::vector<Rational>& moved() const { return moved_; }
  const Rational& total_sw() const { return total_sw_; }

  /// Min-cost flow from step t-1 to step t, for t >= 1.
  Flow flow(std::size_t t, const MetricSpace& m) const;

 private:
  std::vector<SharedMass> steps_;
  std::vector<Rational> served_;
  std::vector<Rational> moved_;
  Rational total_sw_;
};

struct SequenceStats {
  Rational rho;    // 1 / max demand at any vertex and step
  Rational delta;  // mean total variation between successive steps
  Rational max_length;
};

/// The first step contributes no drift.
SequenceStats sequence_stats(const DemandSequence& d);

SupplyTrajectory run_stay(const DemandSequence& d);
SupplyTrajectory run_match(const DemandSequence& d);

/// s^1 = d^1; afterwards jumps to the current demand with probability p and
/// otherwise keeps the previous supply.
SupplyTrajectory run_rand(const DemandSequence& d, double p, Rng& rng);
SupplyTrajectory run_rand(const DemandSequence& d, double p, std::uint64_t seed);

struct CompOutcome {
  bool stayed;
  SupplyTrajectory trajectory;
};

/// One fair coin, drawn before anything else, picks STAY or RAND(p).
CompOutcome run_comp(const DemandSequence& d, double p, Rng& rng);
CompOutcome run_comp(const DemandSequence& d, double p, std::uint64_t seed);

/// Surge prices implementing one online step. A target equal to the demand
/// uses the continuous construction; a target equal to the previous supply
/// uses r = 1 everywhere, which needs every distance to be at least one.
SurgeVector surge_prices_for_step(const MassVector& target, const MassVector& s_prev, const MassVector& d_t,
                                  const MetricSpace& m, ZeroDemandPrice zero_demand = ZeroDemandPrice::Zero);

struct OptOptions {
  /// Exact shortcut for uniform metrics when every demand step is uniform on
  /// one block of a family of disjoint vertex sets.
  bool allow_block_shortcut = true;
  std::size_t max_arcs = 4'000'000;
};

/// Welfare-maximizing supply sequence with full knowledge of the demand.
/// Solved as a min-cost flow on the time-expanded network; throws
/// SizeLimitError when that network would exceed max_arcs.
SupplyTrajectory offline_opt(const DemandSequence& d, const OptOptions& options = {});

/// Rewrites each step, earliest first, so supply never flows into a vertex
/// left above its demand nor out of a vertex left below it. Welfare never
/// decreases.
SupplyTrajectory lazify(const SupplyTrajectory& s, const DemandSequence& d);

/// Lists every step and edge u != v with positive flow where the receiving
/// vertex ends above its demand, or the sending vertex ends below its demand
/// or did not start above it.
CheckReport verify_lazy(const SupplyTrajectory& s, const DemandSequence& d);

struct LazyDiagnostics {
  std::size_t window;
  // Indexed [t][i] with t = 0..T-1 standing for steps 1..T.
  std::vector<std::vector<Rational>> h, g, z;

  /// Largest sum of z over all vertices and any `window` consecutive steps
  /// ending just before some step.
  Rational max_window_z_sum() const;
  Rational h_total() const;
};

/// h = min(previous supply, demand), g = max demand over the preceding
/// window, z = max(0, h - g). Steps before the first use zero demand and the
/// first supply.
LazyDiagnostics lazy_diagnostics(const SupplyTrajectory& s, const DemandSequence& d, std::size_t window);

}  // namespace surgeflow

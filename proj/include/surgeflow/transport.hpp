#pragma once

#include <utility>
#include <vector>

#include "surgeflow/mass_vector.hpp"
#include "surgeflow/metric_space.hpp"
#include "surgeflow/rational.hpp"
#include "surgeflow/report.hpp"

namespace surgeflow {

using Edge = std::pair<Vertex, Vertex>;

struct FlowEntry {
  Vertex from;
  Vertex to;
  Rational amount;

  friend bool operator==(const FlowEntry&, const FlowEntry&) = default;
};

/// A transport plan moving `source` onto `target`. Stored sparsely: only
/// positive entries, sorted by (from, to).
class Flow {
 public:
  /// Throws InvalidFlowError if an entry is negative, out of range, or the
  /// row/column sums disagree with source/target.
  Flow(MassVector source, MassVector target, std::vector<FlowEntry> entries, const MetricSpace& m);

  /// Dense k x k input; zero entries are dropped.
  static Flow from_matrix(MassVector source, MassVector target, const std::vector<std::vector<Rational>>& f,
                          const MetricSpace& m);

  /// f(u,u) = s_u.
  static Flow identity(const MassVector& s, const MetricSpace& m);

  const MassVector& source() const { return source_; }
  const MassVector& target() const { return target_; }
  const std::vector<FlowEntry>& entries() const { return entries_; }
  const Rational& cost() const { return cost_; }
  std::size_t size() const { return source_.size(); }

  Rational amount(Vertex u, Vertex v) const;
  std::vector<Edge> support() const;
  std::vector<std::vector<Rational>> matrix() const;

  friend bool operator==(const Flow& a, const Flow& b) { return a.entries_ == b.entries_; }

 private:
  MassVector source_;
  MassVector target_;
  std::vector<FlowEntry> entries_;
  Rational cost_;
};

/// Optimality certificate: target[v] - source[u] <= l(u,v), with equality on
/// every edge a certified flow uses.
struct DualPotentials {
  std::vector<Rational> source;
  std::vector<Rational> target;
};

struct FlowSolution {
  Flow flow;
  DualPotentials duals;
};

/// Exact earthmover flow from s to d. Keeps min(s_u, d_u) in place and ships
/// the surplus to the deficit by successive shortest paths; the returned
/// support is a forest plus self-loops (at most 2k-1 entries).
FlowSolution min_cost_flow(const MassVector& s, const MassVector& d, const MetricSpace& m);

/// Cost of min_cost_flow(s, d, m), without the certificate. Closed form on
/// uniform metrics.
Rational earthmover(const MassVector& s, const MassVector& d, const MetricSpace& m);

Rational flow_cost(const Flow& f, const MetricSpace& m);

/// Checks dual feasibility on every pair and complementary slackness on the
/// support of f. Throws InvalidFlowError when f does not match its endpoints.
CheckReport verify_min_cost(const Flow& f, const DualPotentials& duals, const MetricSpace& m);

/// Every (u,v) with target[v] - source[u] == l(u,v). Throws ContractViolation
/// if the potentials are infeasible.
std::vector<Edge> zero_reduced_cost_edges(const DualPotentials& duals, const MetricSpace& m);

/// The exact set of edges carrying positive mass in at least one min-cost
/// flow between f's endpoints. f must be optimal and certified by duals.
std::vector<Edge> optimal_support_edges(const Flow& f, const DualPotentials& duals, const MetricSpace& m);

/// One alternative optimum per edge in optimal_support_edges that f leaves
/// unused, found by pushing mass around a zero-cost residual cycle.
std::vector<Flow> alternative_optimal_flows(const Flow& f, const DualPotentials& duals, const MetricSpace& m);

}  // namespace surgeflow

#include <algorithm>

#include "surgeflow/errors.hpp"
#include "surgeflow/online.hpp"

namespace surgeflow {
namespace {

struct Move {
  Vertex from;
  Vertex to;
  Rational amount;
};

// Off-diagonal part of a min-cost flow, most expensive edges first so the
// repairs below cancel the costliest movement.
std::vector<Move> moves_between(const MassVector& prev, const MassVector& cur, const MetricSpace& m) {
  std::vector<Move> out;
  const auto solution = min_cost_flow(prev, cur, m);
  for (const auto& e : solution.flow.entries()) {
    if (e.from != e.to) out.push_back({e.from, e.to, e.amount});
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const Move& a, const Move& b) { return m.distance(a.from, a.to) > m.distance(b.from, b.to); });
  return out;
}

}  // namespace

// Each repair cancels part of one step's movement and leaves the next supply
// untouched. Two kinds:
//   overshoot: inflow into v beyond max(d_v, previous s_v) is kept at its
//     sources instead;
//   over-drain: outflow from u that leaves it below min(d_u, previous s_u)
//     is taken back from its destinations.
// Cancelling movement of cost x at step t raises the next step's movement by
// at most x (triangle inequality) and never lowers demand served, so welfare
// does not drop. Steps are finalized in order because a repair at t only
// changes s^t, which step t+1 then treats as its fixed starting point.
SupplyTrajectory lazify(const SupplyTrajectory& s, const DemandSequence& d) {
  if (s.length() != d.length()) throw InputError("supply and demand sequences differ in length");
  const MetricSpace& m = d.metric();
  std::vector<SharedMass> steps(s.length());
  steps[0] = s.shared(0);
  for (std::size_t t = 1; t < s.length(); ++t) {
    const MassVector& prev = *steps[t - 1];
    const MassVector& dem = d[t];
    auto moves = moves_between(prev, s[t], m);
    std::vector<Rational> cur(s[t].begin(), s[t].end());
    bool changed = false;

    for (Vertex v = 0; v < cur.size(); ++v) {
      if (cur[v] <= prev[v] || cur[v] <= dem[v]) continue;
      Rational excess = cur[v] - max_of(dem[v], prev[v]);
      for (auto& mv : moves) {
        if (mv.to != v || sgn(mv.amount) == 0) continue;
        Rational x = min_of(excess, mv.amount);
        mv.amount -= x;
        cur[v] -= x;
        cur[mv.from] += x;
        excess -= x;
        changed = true;
        if (sgn(excess) == 0) break;
      }
    }
    for (Vertex u = 0; u < cur.size(); ++u) {
      if (cur[u] >= prev[u] || cur[u] >= dem[u]) continue;
      Rational shortfall = min_of(dem[u], prev[u]) - cur[u];
      for (auto& mv : moves) {
        if (mv.from != u || sgn(mv.amount) == 0) continue;
        Rational x = min_of(shortfall, mv.amount);
        mv.amount -= x;
        cur[u] += x;
        cur[mv.to] -= x;
        shortfall -= x;
        changed = true;
        if (sgn(shortfall) == 0) break;
      }
    }
    if (!changed) {
      steps[t] = s.shared(t);
    } else if (std::equal(cur.begin(), cur.end(), prev.begin())) {
      steps[t] = steps[t - 1];
    } else {
      steps[t] = std::make_shared<const MassVector>(std::move(cur));
    }
  }
  return SupplyTrajectory(std::move(steps), d);
}

CheckReport verify_lazy(const SupplyTrajectory& s, const DemandSequence& d) {
  if (s.length() != d.length()) throw InputError("supply and demand sequences differ in length");
  const MetricSpace& m = d.metric();
  CheckReport report;
  for (std::size_t t = 1; t < s.length(); ++t) {
    if (s.shared(t) == s.shared(t - 1)) continue;
    const MassVector &prev = s[t - 1], &cur = s[t], &dem = d[t];
    const Flow f = s.flow(t, m);
    for (const auto& e : f.entries()) {
      if (e.from == e.to) continue;
      const std::string where = "step " + std::to_string(t + 1) + " edge " + m.label(e.from) + "->" + m.label(e.to);
      if (cur[e.to] > dem[e.to]) report.fail(where + ": destination ends above its demand");
      if (!(prev[e.from] > dem[e.from])) report.fail(where + ": origin did not start above its demand");
      if (cur[e.from] < dem[e.from]) report.fail(where + ": origin ends below its demand");
    }
  }
  return report;
}

}  // namespace surgeflow

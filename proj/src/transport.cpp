#include "surgeflow/transport.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>

#include "surgeflow/errors.hpp"
#include "surgeflow/network_flow.hpp"

namespace surgeflow {
namespace {

std::string edge_name(Vertex u, Vertex v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

std::vector<FlowEntry> normalize(std::vector<FlowEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const FlowEntry& a, const FlowEntry& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  std::vector<FlowEntry> out;
  for (auto& e : entries) {
    if (!out.empty() && out.back().from == e.from && out.back().to == e.to) {
      out.back().amount += e.amount;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const FlowEntry& e) { return e.amount == 0; });
  return out;
}

template <class Num>
Num to_num(const Integer& x) {
  if constexpr (std::is_same_v<Num, Integer>) {
    return x;
  } else {
    return static_cast<Num>(x.get_si());
  }
}

template <class Num>
Integer to_integer(const Num& x) {
  if constexpr (std::is_same_v<Num, Integer>) {
    return x;
  } else {
    return Integer(static_cast<long>(x));
  }
}

// Transports scaled integer surplus onto scaled integer deficit. Returns the
// amount on every (surplus index, deficit index) pair.
template <class Num>
std::vector<std::vector<Integer>> solve_scaled(const std::vector<Integer>& supply, const std::vector<Integer>& demand,
                                               const std::vector<std::vector<Integer>>& cost) {
  const std::size_t ns = supply.size();
  const std::size_t nd = demand.size();
  FlowNetwork<Num> net(ns + nd + 2);
  const std::size_t src = ns + nd;
  const std::size_t snk = src + 1;
  Integer total = 0;
  for (const auto& x : supply) total += x;
  std::vector<std::vector<std::size_t>> arc(ns, std::vector<std::size_t>(nd));
  for (std::size_t i = 0; i < ns; ++i) net.add_arc(src, i, to_num<Num>(supply[i]), Num(0));
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nd; ++j) arc[i][j] = net.add_arc(i, ns + j, to_num<Num>(total), to_num<Num>(cost[i][j]));
  }
  for (std::size_t j = 0; j < nd; ++j) net.add_arc(ns + j, snk, to_num<Num>(demand[j]), Num(0));
  Num sent = net.send(src, snk, to_num<Num>(total));
  if (to_integer(sent) != total) throw ContractViolation("transport network could not route all surplus");
  std::vector<std::vector<Integer>> out(ns, std::vector<Integer>(nd));
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nd; ++j) out[i][j] = to_integer(net.flow(arc[i][j]));
  }
  return out;
}

// Removes cycles from the surplus/deficit support by pushing mass around them.
// Every such cycle has zero alternating cost in an optimal plan, so the cost
// is unchanged.
void cancel_cycles(std::vector<std::vector<Rational>>& x) {
  const std::size_t ns = x.size();
  const std::size_t nd = ns ? x[0].size() : 0;
  const std::size_t n = ns + nd;
  while (true) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < ns; ++i) {
      for (std::size_t j = 0; j < nd; ++j) {
        if (x[i][j] > 0) {
          adj[i].push_back(ns + j);
          adj[ns + j].push_back(i);
        }
      }
    }
    std::vector<std::size_t> parent(n, n);
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> cycle;
    for (std::size_t root = 0; root < n && cycle.empty(); ++root) {
      if (seen[root]) continue;
      std::vector<std::size_t> stack{root};
      seen[root] = 1;
      parent[root] = n;
      while (!stack.empty() && cycle.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[u]) {
          if (w == parent[u]) continue;
          if (seen[w]) {
            // Close the cycle through the lowest common ancestor of u and w.
            std::vector<std::size_t> pu{u}, pw{w};
            while (parent[pu.back()] != n) pu.push_back(parent[pu.back()]);
            while (parent[pw.back()] != n) pw.push_back(parent[pw.back()]);
            while (pu.size() > 1 && pw.size() > 1 && pu[pu.size() - 2] == pw[pw.size() - 2]) {
              pu.pop_back();
              pw.pop_back();
            }
            cycle = pu;
            for (std::size_t t = pw.size(); t-- > 1;) cycle.push_back(pw[t - 1]);
            break;
          }
          seen[w] = 1;
          parent[w] = u;
          stack.push_back(w);
        }
      }
    }
    if (cycle.empty()) return;
    // cycle is a closed walk c0 - c1 - ... - c_{m-1} - c0; alternate signs.
    const std::size_t m = cycle.size();
    auto amount = [&](std::size_t a, std::size_t b) -> Rational& {
      return a < ns ? x[a][b - ns] : x[b][a - ns];
    };
    std::optional<Rational> minus;
    for (std::size_t t = 1; t < m; t += 2) {
      const Rational& v = amount(cycle[t], cycle[(t + 1) % m]);
      if (!minus || v < *minus) minus = v;
    }
    for (std::size_t t = 0; t < m; ++t) {
      Rational& v = amount(cycle[t], cycle[(t + 1) % m]);
      if (t % 2 == 0) {
        v += *minus;
      } else {
        v -= *minus;
      }
    }
  }
}

DualPotentials zero_duals(std::size_t k) {
  return {std::vector<Rational>(k, Rational(0)), std::vector<Rational>(k, Rational(0))};
}

// Shortest distances in the residual graph of an optimal plan give feasible,
// complementary potentials.
DualPotentials residual_duals(const Flow& f, const MetricSpace& m) {
  const std::size_t k = m.size();
  std::vector<Rational> phi(k, Rational(0));
  std::vector<std::optional<Rational>> psi(k);
  bool changed = true;
  std::size_t rounds = 0;
  while (changed) {
    if (++rounds > 2 * k + 2) throw ContractViolation("negative residual cycle: flow is not optimal");
    changed = false;
    for (Vertex u = 0; u < k; ++u) {
      for (Vertex v = 0; v < k; ++v) {
        Rational cand = phi[u] + m.distance(u, v);
        if (!psi[v] || cand < *psi[v]) {
          psi[v] = cand;
          changed = true;
        }
      }
    }
    for (const auto& e : f.entries()) {
      Rational cand = *psi[e.to] - m.distance(e.from, e.to);
      if (cand < phi[e.from]) {
        phi[e.from] = cand;
        changed = true;
      }
    }
  }
  DualPotentials out{std::move(phi), std::vector<Rational>(k)};
  for (Vertex v = 0; v < k; ++v) out.target[v] = *psi[v];
  return out;
}

// Adjacency on 2k nodes (u, k+v): tight u -> k+v and support k+v -> u.
std::vector<std::vector<std::size_t>> tight_residual_graph(const Flow& f, const DualPotentials& duals,
                                                           const MetricSpace& m) {
  const std::size_t k = m.size();
  std::vector<std::vector<std::size_t>> adj(2 * k);
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = 0; v < k; ++v) {
      if (duals.target[v] - duals.source[u] == m.distance(u, v)) adj[u].push_back(k + v);
    }
  }
  for (const auto& e : f.entries()) adj[k + e.to].push_back(e.from);
  return adj;
}

std::vector<std::size_t> bfs_path(const std::vector<std::vector<std::size_t>>& adj, std::size_t from, std::size_t to) {
  std::vector<std::size_t> parent(adj.size(), adj.size());
  std::vector<char> seen(adj.size(), 0);
  std::deque<std::size_t> q{from};
  seen[from] = 1;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    if (u == to) break;
    for (std::size_t w : adj[u]) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = u;
      q.push_back(w);
    }
  }
  if (!seen[to]) return {};
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

void require_duals(const DualPotentials& duals, std::size_t k) {
  if (duals.source.size() != k || duals.target.size() != k) throw InputError("dual potentials have wrong length");
}

}  // namespace

Flow::Flow(MassVector source, MassVector target, std::vector<FlowEntry> entries, const MetricSpace& m)
    : source_(std::move(source)), target_(std::move(target)) {
  const std::size_t k = m.size();
  if (source_.size() != k || target_.size() != k) throw InvalidFlowError("flow endpoints do not match metric size");
  for (const auto& e : entries) {
    if (e.from >= k || e.to >= k) throw InvalidFlowError("flow entry " + edge_name(e.from, e.to) + " out of range");
    if (e.amount < 0) throw InvalidFlowError("negative flow on " + edge_name(e.from, e.to));
  }
  entries_ = normalize(std::move(entries));
  std::vector<Rational> row(k, Rational(0)), col(k, Rational(0));
  cost_ = 0;
  for (const auto& e : entries_) {
    row[e.from] += e.amount;
    col[e.to] += e.amount;
    cost_ += e.amount * m.distance(e.from, e.to);
  }
  for (Vertex v = 0; v < k; ++v) {
    if (row[v] != source_[v]) {
      throw InvalidFlowError("outflow of vertex " + std::to_string(v) + " is " + to_string(row[v]) + ", source mass is " +
                             to_string(source_[v]));
    }
    if (col[v] != target_[v]) {
      throw InvalidFlowError("inflow of vertex " + std::to_string(v) + " is " + to_string(col[v]) + ", target mass is " +
                             to_string(target_[v]));
    }
  }
}

Flow Flow::from_matrix(MassVector source, MassVector target, const std::vector<std::vector<Rational>>& f,
                       const MetricSpace& m) {
  if (f.size() != m.size()) throw InvalidFlowError("flow matrix has wrong row count");
  std::vector<FlowEntry> entries;
  for (Vertex u = 0; u < f.size(); ++u) {
    if (f[u].size() != m.size()) throw InvalidFlowError("flow matrix has wrong column count");
    for (Vertex v = 0; v < f[u].size(); ++v) {
      if (f[u][v] != 0) entries.push_back({u, v, f[u][v]});
    }
  }
  return Flow(std::move(source), std::move(target), std::move(entries), m);
}

Flow Flow::identity(const MassVector& s, const MetricSpace& m) {
  std::vector<FlowEntry> entries;
  for (Vertex u = 0; u < s.size(); ++u) entries.push_back({u, u, s[u]});
  return Flow(s, s, std::move(entries), m);
}

Rational Flow::amount(Vertex u, Vertex v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Edge{u, v},
                             [](const FlowEntry& e, const Edge& key) { return Edge{e.from, e.to} < key; });
  if (it != entries_.end() && it->from == u && it->to == v) return it->amount;
  return 0;
}

std::vector<Edge> Flow::support() const {
  std::vector<Edge> out;
  for (const auto& e : entries_) out.emplace_back(e.from, e.to);
  return out;
}

std::vector<std::vector<Rational>> Flow::matrix() const {
  std::vector<std::vector<Rational>> out(size(), std::vector<Rational>(size(), Rational(0)));
  for (const auto& e : entries_) out[e.from][e.to] = e.amount;
  return out;
}

FlowSolution min_cost_flow(const MassVector& s, const MassVector& d, const MetricSpace& m) {
  const std::size_t k = m.size();
  require_dimension(s, k, "supply");
  require_dimension(d, k, "demand");
  if (s == d) return {Flow::identity(s, m), zero_duals(k)};

  std::vector<FlowEntry> entries;
  std::vector<Vertex> surplus_at, deficit_at;
  std::vector<Rational> surplus, deficit;
  for (Vertex v = 0; v < k; ++v) {
    const Rational& keep = min_of(s[v], d[v]);
    if (keep > 0) entries.push_back({v, v, keep});
    if (s[v] > d[v]) {
      surplus_at.push_back(v);
      surplus.push_back(s[v] - d[v]);
    } else if (d[v] > s[v]) {
      deficit_at.push_back(v);
      deficit.push_back(d[v] - s[v]);
    }
  }

  if (const auto& c = m.uniform_length()) {
    // Any plan that only ships surplus to deficit is optimal here.
    std::size_t j = 0;
    Rational left_j = deficit.empty() ? Rational(0) : deficit[0];
    for (std::size_t i = 0; i < surplus.size(); ++i) {
      Rational left_i = surplus[i];
      while (left_i > 0) {
        const Rational x = min_of(left_i, left_j);
        entries.push_back({surplus_at[i], deficit_at[j], x});
        left_i -= x;
        left_j -= x;
        if (left_j == 0 && j + 1 < deficit.size()) left_j = deficit[++j];
      }
    }
    DualPotentials duals = zero_duals(k);
    for (Vertex v : deficit_at) duals.source[v] = duals.target[v] = *c;
    return {Flow(s, d, std::move(entries), m), std::move(duals)};
  }

  std::vector<Rational> masses = surplus;
  masses.insert(masses.end(), deficit.begin(), deficit.end());
  const Integer mass_scale = common_denominator(masses);
  std::vector<Rational> lengths;
  for (Vertex u : surplus_at) {
    for (Vertex v : deficit_at) lengths.push_back(m.distance(u, v));
  }
  const Integer length_scale = common_denominator(lengths);

  std::vector<Integer> sup(surplus.size()), dem(deficit.size());
  for (std::size_t i = 0; i < surplus.size(); ++i) sup[i] = Rational(surplus[i] * mass_scale).get_num();
  for (std::size_t j = 0; j < deficit.size(); ++j) dem[j] = Rational(deficit[j] * mass_scale).get_num();
  std::vector<std::vector<Integer>> cost(surplus.size(), std::vector<Integer>(deficit.size()));
  Integer max_cost = 1;
  for (std::size_t i = 0; i < surplus.size(); ++i) {
    for (std::size_t j = 0; j < deficit.size(); ++j) {
      cost[i][j] = Rational(m.distance(surplus_at[i], deficit_at[j]) * length_scale).get_num();
      if (cost[i][j] > max_cost) max_cost = cost[i][j];
    }
  }
  const Integer bound = mass_scale * max_cost * Integer(static_cast<unsigned long>(k + 4));
  const bool small = bound < Integer(1) << 60;
  auto scaled = small ? solve_scaled<std::int64_t>(sup, dem, cost) : solve_scaled<Integer>(sup, dem, cost);

  std::vector<std::vector<Rational>> x(surplus.size(), std::vector<Rational>(deficit.size()));
  for (std::size_t i = 0; i < surplus.size(); ++i) {
    for (std::size_t j = 0; j < deficit.size(); ++j) {
      x[i][j] = Rational(scaled[i][j], mass_scale);
      x[i][j].canonicalize();
    }
  }
  cancel_cycles(x);
  for (std::size_t i = 0; i < surplus.size(); ++i) {
    for (std::size_t j = 0; j < deficit.size(); ++j) {
      if (x[i][j] > 0) entries.push_back({surplus_at[i], deficit_at[j], x[i][j]});
    }
  }
  Flow f(s, d, std::move(entries), m);
  DualPotentials duals = residual_duals(f, m);
  return {std::move(f), std::move(duals)};
}

Rational earthmover(const MassVector& s, const MassVector& d, const MetricSpace& m) {
  require_dimension(s, m.size(), "supply");
  require_dimension(d, m.size(), "demand");
  if (const auto& c = m.uniform_length()) return *c * total_variation(s, d);
  return min_cost_flow(s, d, m).flow.cost();
}

Rational flow_cost(const Flow& f, const MetricSpace& m) {
  if (f.size() != m.size()) throw InputError("flow and metric sizes differ");
  Rational total = 0;
  for (const auto& e : f.entries()) total += e.amount * m.distance(e.from, e.to);
  return total;
}

CheckReport verify_min_cost(const Flow& f, const DualPotentials& duals, const MetricSpace& m) {
  const std::size_t k = m.size();
  if (f.size() != k) throw InvalidFlowError("flow and metric sizes differ");
  require_duals(duals, k);
  // Re-derive the marginals; Flow's constructor already enforces them, this
  // guards against a flow built over a different metric.
  std::vector<Rational> row(k, Rational(0)), col(k, Rational(0));
  for (const auto& e : f.entries()) {
    row[e.from] += e.amount;
    col[e.to] += e.amount;
  }
  for (Vertex v = 0; v < k; ++v) {
    if (row[v] != f.source()[v] || col[v] != f.target()[v]) {
      throw InvalidFlowError("flow marginals do not match at vertex " + std::to_string(v));
    }
  }
  CheckReport report;
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = 0; v < k; ++v) {
      Rational slack = m.distance(u, v) - (duals.target[v] - duals.source[u]);
      if (slack < 0) report.fail("dual infeasible on " + edge_name(u, v) + " by " + to_string(-slack));
    }
  }
  for (const auto& e : f.entries()) {
    Rational slack = m.distance(e.from, e.to) - (duals.target[e.to] - duals.source[e.from]);
    if (slack != 0) {
      report.fail("flow " + to_string(e.amount) + " on " + edge_name(e.from, e.to) + " has reduced cost " +
                  to_string(slack));
    }
  }
  return report;
}

std::vector<Edge> zero_reduced_cost_edges(const DualPotentials& duals, const MetricSpace& m) {
  const std::size_t k = m.size();
  require_duals(duals, k);
  std::vector<Edge> out;
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = 0; v < k; ++v) {
      Rational gap = duals.target[v] - duals.source[u];
      if (gap > m.distance(u, v)) throw ContractViolation("dual potentials infeasible on " + edge_name(u, v));
      if (gap == m.distance(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Edge> optimal_support_edges(const Flow& f, const DualPotentials& duals, const MetricSpace& m) {
  const std::size_t k = m.size();
  auto tight = zero_reduced_cost_edges(duals, m);
  auto adj = tight_residual_graph(f, duals, m);
  // reach[v] = nodes reachable from target node k+v.
  std::vector<std::vector<char>> reach(k);
  for (Vertex v = 0; v < k; ++v) {
    std::vector<char> seen(2 * k, 0);
    std::vector<std::size_t> stack{k + v};
    seen[k + v] = 1;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[x]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    reach[v] = std::move(seen);
  }
  std::vector<Edge> out;
  for (const auto& [u, v] : tight) {
    if (f.amount(u, v) > 0 || reach[v][u]) out.emplace_back(u, v);
  }
  return out;
}

std::vector<Flow> alternative_optimal_flows(const Flow& f, const DualPotentials& duals, const MetricSpace& m) {
  const std::size_t k = m.size();
  auto adj = tight_residual_graph(f, duals, m);
  std::vector<Flow> out;
  for (const auto& [u, v] : optimal_support_edges(f, duals, m)) {
    if (f.amount(u, v) > 0) continue;
    auto path = bfs_path(adj, k + v, u);
    if (path.empty()) continue;
    // Cycle u -> v' -> ... -> u; target->source steps undo existing flow.
    std::optional<Rational> theta;
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      if (path[t] >= k) {
        Rational avail = f.amount(path[t + 1], path[t] - k);
        if (!theta || avail < *theta) theta = avail;
      }
    }
    auto entries = f.entries();
    entries.push_back({u, v, *theta});
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      if (path[t] >= k) {
        entries.push_back({path[t + 1], path[t] - k, Rational(-*theta)});
      } else {
        entries.push_back({path[t], path[t + 1] - k, *theta});
      }
    }
    // Merge before the Flow constructor sees the negative adjustments.
    std::map<Edge, Rational> merged;
    for (const auto& e : entries) merged[{e.from, e.to}] += e.amount;
    std::vector<FlowEntry> clean;
    for (const auto& [edge, amt] : merged) clean.push_back({edge.first, edge.second, amt});
    Flow g(f.source(), f.target(), std::move(clean), m);
    if (g.cost() != f.cost()) throw ContractViolation("alternative flow changed the cost");
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace surgeflow

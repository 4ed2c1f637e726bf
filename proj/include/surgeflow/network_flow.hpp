#pragma once

// Integer min-cost flow by successive shortest paths with Johnson potentials.
// Header-only so it can be instantiated for int64_t (fast) and mpz_class
// (when scaled rationals overflow 64 bits).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "surgeflow/errors.hpp"

namespace surgeflow {

template <class Num>
class FlowNetwork {
 public:
  using Node = std::size_t;
  using ArcId = std::size_t;

  explicit FlowNetwork(std::size_t nodes = 0) : head_(nodes) {}

  Node add_node() {
    head_.emplace_back();
    return head_.size() - 1;
  }
  std::size_t node_count() const { return head_.size(); }

  /// Adds a directed arc and returns its id. Its paired residual arc is id+1.
  ArcId add_arc(Node from, Node to, const Num& capacity, const Num& cost) {
    ArcId id = arcs_.size();
    arcs_.push_back({from, to, capacity, cost});
    arcs_.push_back({to, from, Num(0), Num(-cost)});
    head_[from].push_back(id);
    head_[to].push_back(id + 1);
    if (cost < 0) has_negative_ = true;
    if (from >= to) forward_only_ = false;
    original_.push_back(capacity);
    original_.push_back(Num(0));
    return id;
  }

  /// Sends up to `amount` units from s to t along successive cheapest paths.
  /// Stops early once t is unreachable. Returns the amount actually sent.
  Num send(Node s, Node t, Num amount) {
    init_potentials(s);
    Num sent = 0;
    std::vector<Num> dist(head_.size());
    std::vector<ArcId> parent(head_.size());
    std::vector<char> reached(head_.size());
    while (amount > 0) {
      if (!shortest_paths(s, dist, parent, reached) || !reached[t]) break;
      Num push = amount;
      for (Node v = t; v != s; v = arcs_[parent[v]].from) {
        if (arcs_[parent[v]].cap < push) push = arcs_[parent[v]].cap;
      }
      for (Node v = t; v != s; v = arcs_[parent[v]].from) {
        arcs_[parent[v]].cap -= push;
        arcs_[parent[v] ^ 1].cap += push;
      }
      amount -= push;
      sent += push;
    }
    return sent;
  }

  /// Flow currently carried by a forward arc.
  Num flow(ArcId arc) const { return original_[arc] - arcs_[arc].cap; }

  Num total_cost() const {
    Num total = 0;
    for (ArcId a = 0; a < arcs_.size(); a += 2) total += flow(a) * arcs_[a].cost;
    return total;
  }

  Node arc_from(ArcId a) const { return arcs_[a].from; }
  Node arc_to(ArcId a) const { return arcs_[a].to; }

 private:
  struct Arc {
    Node from;
    Node to;
    Num cap;
    Num cost;
  };

  void init_potentials(Node s) {
    if (potentials_ready_) return;
    potentials_ready_ = true;
    potential_.assign(head_.size(), Num(0));
    if (!has_negative_) return;
    std::vector<char> known(head_.size(), 0);
    known[s] = 1;
    if (forward_only_) {
      // Arcs only go from lower to higher ids: one pass in id order suffices.
      for (Node u = 0; u < head_.size(); ++u) {
        if (!known[u]) continue;
        for (ArcId a : head_[u]) {
          const Arc& e = arcs_[a];
          if (e.cap <= 0) continue;
          Num cand = potential_[u] + e.cost;
          if (!known[e.to] || cand < potential_[e.to]) {
            potential_[e.to] = cand;
            known[e.to] = 1;
          }
        }
      }
    } else {
      // Queue-based Bellman-Ford.
      std::vector<char> queued(head_.size(), 0);
      std::vector<std::size_t> relax_count(head_.size(), 0);
      std::queue<Node> q;
      q.push(s);
      queued[s] = 1;
      while (!q.empty()) {
        Node u = q.front();
        q.pop();
        queued[u] = 0;
        for (ArcId a : head_[u]) {
          const Arc& e = arcs_[a];
          if (e.cap <= 0) continue;
          Num cand = potential_[u] + e.cost;
          if (!known[e.to] || cand < potential_[e.to]) {
            potential_[e.to] = cand;
            known[e.to] = 1;
            if (++relax_count[e.to] > head_.size()) throw ContractViolation("negative cycle in flow network");
            if (!queued[e.to]) {
              queued[e.to] = 1;
              q.push(e.to);
            }
          }
        }
      }
    }
    // Unreachable nodes keep a potential above every reachable one so reduced
    // costs of arcs entering the reachable part stay nonnegative.
    std::optional<Num> top;
    for (Node v = 0; v < head_.size(); ++v) {
      if (known[v] && (!top || potential_[v] > *top)) top = potential_[v];
    }
    for (Node v = 0; v < head_.size(); ++v) {
      if (!known[v]) potential_[v] = *top;
    }
  }

  // Dijkstra on reduced costs; folds distances into the potentials.
  bool shortest_paths(Node s, std::vector<Num>& dist, std::vector<ArcId>& parent, std::vector<char>& reached) {
    std::fill(reached.begin(), reached.end(), 0);
    std::vector<char> done(head_.size(), 0);
    using Entry = std::pair<Num, Node>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    dist[s] = 0;
    reached[s] = 1;
    pq.push({Num(0), s});
    Num reduced;
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (done[u] || du != dist[u]) continue;
      done[u] = 1;
      for (ArcId a : head_[u]) {
        const Arc& e = arcs_[a];
        if (e.cap <= 0 || done[e.to]) continue;
        reduced = e.cost + potential_[u] - potential_[e.to];
        Num cand = du + reduced;
        if (!reached[e.to] || cand < dist[e.to]) {
          dist[e.to] = cand;
          parent[e.to] = a;
          reached[e.to] = 1;
          pq.push({cand, e.to});
        }
      }
    }
    std::optional<Num> top;
    for (Node v = 0; v < head_.size(); ++v) {
      if (reached[v] && (!top || dist[v] > *top)) top = dist[v];
    }
    for (Node v = 0; v < head_.size(); ++v) potential_[v] += reached[v] ? dist[v] : *top;
    return true;
  }

  std::vector<std::vector<ArcId>> head_;
  std::vector<Arc> arcs_;
  std::vector<Num> original_;
  std::vector<Num> potential_;
  bool has_negative_ = false;
  bool forward_only_ = true;
  bool potentials_ready_ = false;
};

}  // namespace surgeflow

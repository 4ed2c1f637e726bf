#include <cstdint>
#include <map>
#include <optional>
#include <type_traits>

#include "surgeflow/errors.hpp"
#include "surgeflow/network_flow.hpp"
#include "surgeflow/online.hpp"

namespace surgeflow {
namespace {

// Partition of the demanded vertices into blocks such that every step is the
// uniform distribution on one block. Returns the active block per step and
// one representative step per block.
struct BlockStructure {
  std::vector<std::size_t> active;
  std::vector<SharedMass> uniform_on_block;
};

std::optional<BlockStructure> find_blocks(const DemandSequence& d) {
  const std::size_t k = d.metric().size();
  std::vector<std::optional<std::size_t>> block_of(k);
  std::vector<std::size_t> block_size;
  BlockStructure out;
  for (std::size_t t = 0; t < d.length(); ++t) {
    const MassVector& step = d[t];
    std::optional<std::size_t> block;
    std::size_t support = 0;
    bool first = true;
    const Rational* level = nullptr;
    for (Vertex i = 0; i < k; ++i) {
      if (sgn(step[i]) == 0) continue;
      if (level && step[i] != *level) return std::nullopt;
      level = &step[i];
      ++support;
      if (first) block = block_of[i];
      first = false;
      if (block_of[i] != block) return std::nullopt;
    }
    if (!block) {
      // Fresh block: none of its vertices may belong to another one.
      block = block_size.size();
      block_size.push_back(support);
      out.uniform_on_block.push_back(d.shared(t));
      for (Vertex i = 0; i < k; ++i) {
        if (sgn(step[i]) != 0) block_of[i] = block;
      }
    } else if (block_size[*block] != support) {
      return std::nullopt;
    }
    out.active.push_back(*block);
  }
  return out;
}

// With all distances c, spreading mass evenly inside a block serves all of it,
// so the problem collapses to one unit of mass walking between blocks.
SupplyTrajectory opt_by_blocks(const DemandSequence& d, const BlockStructure& b, const Rational& c) {
  const std::size_t T = d.length(), n = b.uniform_on_block.size();
  std::vector<Rational> value(n, Rational(0));
  std::vector<std::vector<std::size_t>> came_from(T, std::vector<std::size_t>(n));
  std::vector<std::size_t> best_at(T);
  auto argmax = [&]() {
    std::size_t arg = 0;
    for (std::size_t g = 1; g < n; ++g) {
      if (value[g] > value[arg]) arg = g;
    }
    return arg;
  };
  value[b.active[0]] = 1;
  best_at[0] = argmax();
  for (std::size_t t = 1; t < T; ++t) {
    const std::size_t lead = best_at[t - 1];
    const Rational switch_value = value[lead] - c;
    for (std::size_t g = 0; g < n; ++g) {
      if (value[g] >= switch_value) {
        came_from[t][g] = g;
      } else {
        came_from[t][g] = lead;
        value[g] = switch_value;
      }
    }
    value[b.active[t]] += 1;
    best_at[t] = argmax();
  }
  std::vector<SharedMass> steps(T);
  std::size_t at = best_at[T - 1];
  for (std::size_t t = T; t-- > 0;) {
    steps[t] = b.uniform_on_block[at];
    at = came_from[t][at];
  }
  return SupplyTrajectory(std::move(steps), d);
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

struct ScaledProblem {
  Integer mass_scale;    // lcm of demand denominators
  Integer length_scale;  // lcm of distance denominators
  bool use_hub;
};

// Time-expanded network. Per step t and vertex i: in(t,i) holds s^t_i; two
// parallel arcs to out(t,i) serve demand (capped at d^t_i, reward 1) or idle;
// out(t,i) continues to in(t+1,j) directly or, on uniform metrics, through a
// per-step hub.
template <class Num>
SupplyTrajectory solve_network(const DemandSequence& d, const ScaledProblem& p, Rational& network_sw) {
  const std::size_t T = d.length(), k = d.metric().size();
  const MetricSpace& m = d.metric();
  const Num D = to_num<Num>(p.mass_scale);
  const Num L = to_num<Num>(p.length_scale);
  auto scaled_length = [&](Vertex u, Vertex v) {
    return to_num<Num>(Rational(m.distance(u, v) * p.length_scale).get_num());
  };

  FlowNetwork<Num> net;
  const auto source = net.add_node();
  std::vector<std::size_t> in(T * k), out(T * k), hub(T);
  for (std::size_t t = 0; t < T; ++t) {
    for (Vertex i = 0; i < k; ++i) in[t * k + i] = net.add_node();
    for (Vertex i = 0; i < k; ++i) out[t * k + i] = net.add_node();
    if (p.use_hub && t + 1 < T) hub[t] = net.add_node();
  }
  const auto sink = net.add_node();

  std::vector<std::size_t> service_arcs;  // pairs per (t, i)
  service_arcs.reserve(2 * T * k);
  for (Vertex i = 0; i < k; ++i) net.add_arc(source, in[i], D, Num(0));
  for (std::size_t t = 0; t < T; ++t) {
    for (Vertex i = 0; i < k; ++i) {
      const Num cap = to_num<Num>(Rational(d[t][i] * p.mass_scale).get_num());
      service_arcs.push_back(net.add_arc(in[t * k + i], out[t * k + i], cap, Num(-L)));
      service_arcs.push_back(net.add_arc(in[t * k + i], out[t * k + i], D, Num(0)));
    }
    for (Vertex i = 0; i < k; ++i) {
      const auto from = out[t * k + i];
      if (t + 1 == T) {
        net.add_arc(from, sink, D, Num(0));
        continue;
      }
      net.add_arc(from, in[(t + 1) * k + i], D, Num(0));
      if (p.use_hub) {
        net.add_arc(from, hub[t], D, scaled_length(0, 1));
      } else {
        for (Vertex j = 0; j < k; ++j) {
          if (j != i) net.add_arc(from, in[(t + 1) * k + j], D, scaled_length(i, j));
        }
      }
    }
    if (p.use_hub && t + 1 < T) {
      for (Vertex j = 0; j < k; ++j) net.add_arc(hub[t], in[(t + 1) * k + j], D, Num(0));
    }
  }
  if (net.send(source, sink, D) != D) throw ContractViolation("time-expanded network could not route all supply");

  network_sw = Rational(to_integer<Num>(-net.total_cost()), p.mass_scale * p.length_scale);
  network_sw.canonicalize();
  std::vector<SharedMass> steps(T);
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<Rational> s(k);
    for (Vertex i = 0; i < k; ++i) {
      const std::size_t a = service_arcs[2 * (t * k + i)];
      s[i] = Rational(to_integer<Num>(net.flow(a) + net.flow(a + 2)), p.mass_scale);
      s[i].canonicalize();
    }
    steps[t] = std::make_shared<const MassVector>(std::move(s));
  }
  return SupplyTrajectory(std::move(steps), d);
}

}  // namespace

SupplyTrajectory offline_opt(const DemandSequence& d, const OptOptions& options) {
  const MetricSpace& m = d.metric();
  const std::size_t T = d.length(), k = m.size();
  const auto& uniform = m.uniform_length();
  if (k == 1) return run_match(d);
  if (uniform && options.allow_block_shortcut) {
    if (auto blocks = find_blocks(d)) return opt_by_blocks(d, *blocks, *uniform);
  }

  ScaledProblem p;
  p.use_hub = uniform && k >= 4;
  std::vector<Rational> masses;
  for (std::size_t t = 0; t < T; ++t) {
    for (const auto& x : d[t]) {
      if (sgn(x) != 0) masses.push_back(x);
    }
  }
  const std::size_t moves_per_step = p.use_hub ? 2 * k : k * (k - 1);
  const std::size_t arcs = k + 3 * T * k + (T - 1) * moves_per_step;
  if (arcs > options.max_arcs) {
    throw SizeLimitError("offline optimum needs " + std::to_string(arcs) + " arcs, limit is " +
                         std::to_string(options.max_arcs));
  }
  p.mass_scale = common_denominator(masses);
  std::vector<Rational> lengths;
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = 0; v < k; ++v) lengths.push_back(m.distance(u, v));
  }
  p.length_scale = common_denominator(lengths);

  // Path costs stay within (2T) * (L + L * max length) per unit of flow.
  const Integer per_unit = (p.length_scale + Rational(m.max_distance() * p.length_scale).get_num()) *
                           Integer(static_cast<unsigned long>(2 * T + 4));
  const Integer bound = per_unit * (p.mass_scale + 1) * Integer(static_cast<unsigned long>(k + 1));
  Rational network_sw;
  auto traj = bound < Integer(1) << 60 ? solve_network<std::int64_t>(d, p, network_sw)
                                       : solve_network<Integer>(d, p, network_sw);
  if (traj.total_sw() != network_sw) {
    throw ContractViolation("recovered supply sequence has welfare " + to_string(traj.total_sw()) +
                            ", network optimum is " + to_string(network_sw));
  }
  return traj;
}

}  // namespace surgeflow

#pragma once

// Shared test instances and hand-rolled random generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "surgeflow/mass_vector.hpp"
#include "surgeflow/metric_space.hpp"
#include "surgeflow/rational.hpp"

namespace fixtures {

using surgeflow::MassVector;
using surgeflow::MetricSpace;
using surgeflow::Rational;

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Six-vertex road network of the worked example; vertices v1..v6 are 0..5.
inline MetricSpace example_metric() {
  const int d[6][6] = {
      {0, 1, 2, 1, 2, 3},  //
      {1, 0, 1, 2, 1, 2},  //
      {2, 1, 0, 3, 2, 1},  //
      {1, 2, 3, 0, 1, 2},  //
      {2, 1, 2, 1, 0, 1},  //
      {3, 2, 1, 2, 1, 0},
  };
  std::vector<std::vector<Rational>> m(6, std::vector<Rational>(6));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) m[i][j] = d[i][j];
  }
  return MetricSpace(m, {"v1", "v2", "v3", "v4", "v5", "v6"});
}

inline MassVector example_supply() { return MassVector({q(1, 3), q(1, 3), q(1, 3), 0, 0, 0}); }
inline MassVector example_demand() { return MassVector({0, 0, q(1, 8), q(3, 8), q(3, 8), q(1, 8)}); }

// The two optimal plans drawn for the example, as dense 6x6 matrices.
inline std::vector<std::vector<Rational>> example_flow_a() {
  std::vector<std::vector<Rational>> f(6, std::vector<Rational>(6, Rational(0)));
  f[2][2] = q(1, 8);
  f[2][5] = q(1, 8);
  f[2][4] = q(1, 12);
  f[1][4] = q(7, 24);
  f[1][3] = q(1, 24);
  f[0][3] = q(1, 3);
  return f;
}

inline std::vector<std::vector<Rational>> example_flow_b() {
  std::vector<std::vector<Rational>> f(6, std::vector<Rational>(6, Rational(0)));
  f[2][2] = q(1, 8);
  f[2][5] = q(1, 8);
  f[2][4] = q(1, 24);
  f[2][3] = q(1, 24);
  f[1][4] = q(1, 3);
  f[0][3] = q(1, 3);
  return f;
}

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Mass vector whose entries are multiples of 1/den.
inline MassVector random_mass(Rng& rng, std::size_t k, int den) {
  std::vector<long> units(k, 0);
  for (int u = 0; u < den; ++u) units[uniform_int(rng, 0, static_cast<int>(k) - 1)]++;
  std::vector<Rational> m(k);
  for (std::size_t i = 0; i < k; ++i) m[i] = q(units[i], den);
  return MassVector(m);
}

inline MassVector random_mass(Rng& rng, std::size_t k) { return random_mass(rng, k, uniform_int(rng, 1, 12)); }

// Shortest-path closure of a complete graph with random positive weights,
// half of them non-integral.
inline MetricSpace random_metric(Rng& rng, std::size_t k) {
  std::vector<surgeflow::WeightedEdge> edges;
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) {
      if (k > 2 && uniform_int(rng, 0, 3) == 0) continue;
      edges.push_back({u, v, q(uniform_int(rng, 1, 10), uniform_int(rng, 1, 2))});
    }
  }
  for (std::size_t v = 0; v + 1 < k; ++v) edges.push_back({v, v + 1, q(uniform_int(rng, 2, 12), 2)});
  return MetricSpace::from_edges(k, edges);
}

}  // namespace fixtures

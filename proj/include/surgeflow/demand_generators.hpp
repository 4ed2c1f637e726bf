#pragma once

#include <cstdint>

#include "surgeflow/online.hpp"

namespace surgeflow {

/// Each step puts all demand on one uniformly random vertex. Unit metric.
DemandSequence gen_single_vertex(std::size_t k, std::size_t T, Rng& rng);

/// Vertices are cut into floor(k / ceil(rho)) consecutive blocks of
/// ceil(rho); each step spreads demand uniformly over one random block.
/// Unit metric.
DemandSequence gen_subset(const Rational& rho, std::size_t k, std::size_t T, Rng& rng);

/// Runs of a single demanded vertex on the metric with all distances
/// 1 + epsilon. Run lengths are geometric with mean 1 + epsilon and
/// consecutive runs never share a vertex.
DemandSequence gen_geometric(const Rational& epsilon, std::size_t k, std::size_t T, Rng& rng);

/// Each step is (1, 0, ...) or (1 - 2 delta, 2 delta, 0, ...) with equal
/// probability. Unit metric on k >= 2 vertices.
DemandSequence gen_drift(const Rational& delta, std::size_t T, Rng& rng, std::size_t k = 2);

}  // namespace surgeflow

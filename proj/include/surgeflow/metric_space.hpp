#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surgeflow/rational.hpp"

namespace surgeflow {

using Vertex = std::size_t;

struct WeightedEdge {
  Vertex from;
  Vertex to;
  Rational length;
};

/// Finite metric space on vertices 0..k-1 with exact rational distances.
///
/// Construction validates the metric axioms (zero diagonal, symmetry,
/// triangle inequality, nonnegativity). Raw road networks whose edge labels
/// are not already shortest paths go through from_edges(), which applies the
/// shortest-path closure.
class MetricSpace {
 public:
  /// Row-major k x k distance matrix. Labels default to "0".."k-1".
  MetricSpace(std::vector<std::vector<Rational>> distances,
              std::vector<std::string> labels = {});

  /// Shortest-path closure of an undirected edge list. Every pair must end
  /// up connected.
  static MetricSpace from_edges(std::size_t vertex_count, const std::vector<WeightedEdge>& edges,
                                std::vector<std::string> labels = {});

  /// All off-diagonal distances equal to `length`.
  static MetricSpace uniform(std::size_t vertex_count, const Rational& length = 1);

  std::size_t size() const { return k_; }
  const Rational& distance(Vertex u, Vertex v) const { return dist_[u * k_ + v]; }
  const Rational& max_distance() const { return max_; }

  /// True iff every off-diagonal distance is at least one.
  bool unit_min() const { return unit_min_; }

  /// The common off-diagonal distance when the metric is uniform.
  const std::optional<Rational>& uniform_length() const { return uniform_; }

  const std::string& label(Vertex v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Vertex> find(std::string_view label) const;

  std::vector<std::vector<Rational>> matrix() const;

 private:
  std::size_t k_ = 0;
  std::vector<Rational> dist_;
  std::vector<std::string> labels_;
  Rational max_ = 0;
  bool unit_min_ = true;
  std::optional<Rational> uniform_;
};

/// Floyd-Warshall closure of a symmetric matrix whose missing entries are
/// std::nullopt. Throws InputError if the graph is disconnected.
std::vector<std::vector<Rational>> shortest_path_closure(
    const std::vector<std::vector<std::optional<Rational>>>& lengths);

}  // namespace surgeflow

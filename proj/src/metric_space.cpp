#include "surgeflow/metric_space.hpp"

#include "surgeflow/errors.hpp"

namespace surgeflow {

MetricSpace::MetricSpace(std::vector<std::vector<Rational>> distances,
                         std::vector<std::string> labels)
    : k_(distances.size()) {
  if (k_ == 0) throw InputError("metric space needs at least one vertex");
  dist_.reserve(k_ * k_);
  for (const auto& row : distances) {
    if (row.size() != k_) throw InputError("distance matrix is not square");
    for (const auto& x : row) dist_.push_back(x);
  }
  for (Vertex u = 0; u < k_; ++u) {
    if (distance(u, u) != 0) {
      throw InputError("distance from vertex " + std::to_string(u) + " to itself is not zero");
    }
    for (Vertex v = 0; v < k_; ++v) {
      const auto& d = distance(u, v);
      if (d < 0) throw InputError("negative distance between " + std::to_string(u) + " and " + std::to_string(v));
      if (d != distance(v, u)) {
        throw InputError("distance matrix is not symmetric at (" + std::to_string(u) + "," +
                         std::to_string(v) + ")");
      }
    }
  }
  bool uniform = true;
  const Rational* common = nullptr;
  for (Vertex u = 0; u < k_; ++u) {
    for (Vertex v = 0; v < k_; ++v) {
      if (u == v) continue;
      const auto& d = distance(u, v);
      if (d > max_) max_ = d;
      if (d < 1) unit_min_ = false;
      if (common == nullptr) {
        common = &d;
      } else if (d != *common) {
        uniform = false;
      }
    }
  }
  if (uniform) uniform_ = common != nullptr ? *common : Rational(1);

  // A uniform matrix with a nonnegative constant is always a metric.
  for (Vertex u = 0; u < k_ && !uniform; ++u) {
    for (Vertex v = 0; v < k_; ++v) {
      for (Vertex w = 0; w < k_; ++w) {
        if (distance(u, w) > distance(u, v) + distance(v, w)) {
          throw InputError("triangle inequality fails for (" + std::to_string(u) + "," +
                           std::to_string(v) + "," + std::to_string(w) + ")");
        }
      }
    }
  }

  if (labels.empty()) {
    for (Vertex v = 0; v < k_; ++v) labels.push_back(std::to_string(v));
  }
  if (labels.size() != k_) throw InputError("label count does not match vertex count");
  labels_ = std::move(labels);
  for (Vertex a = 0; a < k_; ++a) {
    for (Vertex b = a + 1; b < k_; ++b) {
      if (labels_[a] == labels_[b]) throw InputError("duplicate vertex label " + labels_[a]);
    }
  }
}

MetricSpace MetricSpace::from_edges(std::size_t vertex_count, const std::vector<WeightedEdge>& edges,
                                    std::vector<std::string> labels) {
  std::vector<std::vector<std::optional<Rational>>> lengths(
      vertex_count, std::vector<std::optional<Rational>>(vertex_count));
  for (Vertex v = 0; v < vertex_count; ++v) lengths[v][v] = Rational(0);
  for (const auto& e : edges) {
    if (e.from >= vertex_count || e.to >= vertex_count) throw InputError("edge endpoint out of range");
    if (e.length < 0) throw InputError("negative edge length");
    auto& slot = lengths[e.from][e.to];
    if (!slot || e.length < *slot) {
      slot = e.length;
      lengths[e.to][e.from] = e.length;
    }
  }
  return MetricSpace(shortest_path_closure(lengths), std::move(labels));
}

MetricSpace MetricSpace::uniform(std::size_t vertex_count, const Rational& length) {
  std::vector<std::vector<Rational>> d(vertex_count, std::vector<Rational>(vertex_count, length));
  for (Vertex v = 0; v < vertex_count; ++v) d[v][v] = 0;
  return MetricSpace(std::move(d));
}

std::optional<Vertex> MetricSpace::find(std::string_view label) const {
  for (Vertex v = 0; v < k_; ++v) {
    if (labels_[v] == label) return v;
  }
  return std::nullopt;
}

std::vector<std::vector<Rational>> MetricSpace::matrix() const {
  std::vector<std::vector<Rational>> out(k_, std::vector<Rational>(k_));
  for (Vertex u = 0; u < k_; ++u) {
    for (Vertex v = 0; v < k_; ++v) out[u][v] = distance(u, v);
  }
  return out;
}

std::vector<std::vector<Rational>> shortest_path_closure(
    const std::vector<std::vector<std::optional<Rational>>>& lengths) {
  const std::size_t k = lengths.size();
  auto d = lengths;
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!d[i][m]) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (!d[m][j]) continue;
        Rational through = *d[i][m] + *d[m][j];
        if (!d[i][j] || through < *d[i][j]) d[i][j] = through;
      }
    }
  }
  std::vector<std::vector<Rational>> out(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!d[i][j]) {
        throw InputError("vertices " + std::to_string(i) + " and " + std::to_string(j) + " are not connected");
      }
      out[i][j] = *d[i][j];
    }
  }
  return out;
}

}  // namespace surgeflow

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "surgeflow/metric_space.hpp"
#include "surgeflow/rational.hpp"

namespace surgeflow {

/// Nonnegative per-vertex masses summing to exactly one. Used for supply,
/// demand and target-supply vectors alike.
class MassVector {
 public:
  /// Throws InputError if an entry is negative or the entries do not sum to 1.
  explicit MassVector(std::vector<Rational> masses);

  static MassVector uniform(std::size_t k);
  static MassVector unit(std::size_t k, Vertex at);

  std::size_t size() const { return masses_.size(); }
  const Rational& operator[](Vertex v) const { return masses_[v]; }
  std::span<const Rational> values() const { return masses_; }

  auto begin() const { return masses_.begin(); }
  auto end() const { return masses_.end(); }

  friend bool operator==(const MassVector& a, const MassVector& b) { return a.masses_ == b.masses_; }

 private:
  std::vector<Rational> masses_;
};

/// Throws InputError unless `m` has exactly `k` entries.
void require_dimension(const MassVector& m, std::size_t k, const char* what);

/// Total variation distance, half the L1 distance.
Rational total_variation(const MassVector& a, const MassVector& b);

/// Sum over vertices of min(supply, demand).
Rational demand_served(const MassVector& supply, const MassVector& demand);

}  // namespace surgeflow

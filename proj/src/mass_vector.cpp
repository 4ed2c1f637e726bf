#include "surgeflow/mass_vector.hpp"

#include <string>

#include "surgeflow/errors.hpp"

namespace surgeflow {

MassVector::MassVector(std::vector<Rational> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw InputError("mass vector is empty");
  Rational total = 0;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i] < 0) throw InputError("negative mass at vertex " + std::to_string(i));
    total += masses_[i];
  }
  if (total != 1) throw InputError("masses sum to " + to_string(total) + ", expected 1");
}

MassVector MassVector::uniform(std::size_t k) {
  return MassVector(std::vector<Rational>(k, Rational(1, static_cast<unsigned long>(k))));
}

MassVector MassVector::unit(std::size_t k, Vertex at) {
  std::vector<Rational> m(k, Rational(0));
  m.at(at) = 1;
  return MassVector(std::move(m));
}

void require_dimension(const MassVector& m, std::size_t k, const char* what) {
  if (m.size() != k) {
    throw InputError(std::string(what) + " has " + std::to_string(m.size()) + " entries, metric has " +
                     std::to_string(k) + " vertices");
  }
}

Rational total_variation(const MassVector& a, const MassVector& b) {
  Rational out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) out += a[i] - b[i];
  }
  return out;
}

Rational demand_served(const MassVector& supply, const MassVector& demand) {
  Rational out = 0;
  for (std::size_t i = 0; i < supply.size(); ++i) {
    if (sgn(supply[i]) != 0 && sgn(demand[i]) != 0) out += min_of(supply[i], demand[i]);
  }
  return out;
}

}  // namespace surgeflow

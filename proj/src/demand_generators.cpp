#include "surgeflow/demand_generators.hpp"

#include "surgeflow/errors.hpp"

namespace surgeflow {
namespace {

void check_shape(std::size_t k, std::size_t T) {
  if (k == 0) throw InputError("generator needs at least one vertex");
  if (T == 0) throw InputError("generator needs at least one step");
}

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

std::vector<SharedMass> unit_steps(std::size_t k) {
  std::vector<SharedMass> out;
  for (Vertex v = 0; v < k; ++v) out.push_back(std::make_shared<const MassVector>(MassVector::unit(k, v)));
  return out;
}

}  // namespace

DemandSequence gen_single_vertex(std::size_t k, std::size_t T, Rng& rng) {
  check_shape(k, T);
  auto units = unit_steps(k);
  std::vector<SharedMass> steps(T);
  for (auto& s : steps) s = units[pick(rng, k)];
  return DemandSequence(MetricSpace::uniform(k), std::move(steps));
}

DemandSequence gen_subset(const Rational& rho, std::size_t k, std::size_t T, Rng& rng) {
  check_shape(k, T);
  if (rho < 1 || rho > static_cast<unsigned long>(k)) throw InputError("rho must lie in [1, k]");
  const Integer ceiling = (rho.get_num() + rho.get_den() - 1) / rho.get_den();
  const std::size_t size = ceiling.get_ui();
  const std::size_t blocks = k / size;
  std::vector<SharedMass> block_steps;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::vector<Rational> masses(k, Rational(0));
    for (std::size_t j = 0; j < size; ++j) masses[b * size + j] = Rational(1, static_cast<unsigned long>(size));
    block_steps.push_back(std::make_shared<const MassVector>(std::move(masses)));
  }
  std::vector<SharedMass> steps(T);
  for (auto& s : steps) s = block_steps[pick(rng, blocks)];
  return DemandSequence(MetricSpace::uniform(k), std::move(steps));
}

DemandSequence gen_geometric(const Rational& epsilon, std::size_t k, std::size_t T, Rng& rng) {
  check_shape(k, T);
  if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie in (0, 1)");
  if (k < 2) throw InputError("geometric runs need two vertices to alternate between");
  auto units = unit_steps(k);
  // Failures before the first success, so run length 1 + X has mean 1/p.
  std::geometric_distribution<std::size_t> extra(to_double(1 / (1 + epsilon)));
  std::vector<SharedMass> steps;
  steps.reserve(T);
  std::size_t at = pick(rng, k);
  while (steps.size() < T) {
    const std::size_t run = 1 + extra(rng);
    for (std::size_t i = 0; i < run && steps.size() < T; ++i) steps.push_back(units[at]);
    const std::size_t next = pick(rng, k - 1);
    at = next >= at ? next + 1 : next;
  }
  return DemandSequence(MetricSpace::uniform(k, 1 + epsilon), std::move(steps));
}

DemandSequence gen_drift(const Rational& delta, std::size_t T, Rng& rng, std::size_t k) {
  check_shape(k, T);
  if (k < 2) throw InputError("drift sequences need two vertices");
  if (delta < 0 || 2 * delta > 1) throw InputError("delta must lie in [0, 1/2]");
  std::vector<Rational> split(k, Rational(0));
  split[0] = 1 - 2 * delta;
  split[1] = 2 * delta;
  const SharedMass options[2] = {std::make_shared<const MassVector>(MassVector::unit(k, 0)),
                                 std::make_shared<const MassVector>(std::move(split))};
  std::vector<SharedMass> steps(T);
  std::bernoulli_distribution coin(0.5);
  for (auto& s : steps) s = options[coin(rng) ? 1 : 0];
  return DemandSequence(MetricSpace::uniform(k), std::move(steps));
}

}  // namespace surgeflow

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "fixtures.hpp"
#include "surgeflow/demand_generators.hpp"
#include "surgeflow/errors.hpp"
#include "surgeflow/experiment.hpp"
#include "surgeflow/online.hpp"

using namespace surgeflow;
using fixtures::q;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

DemandSequence sequence(const MetricSpace& m, const std::vector<std::vector<Rational>>& steps) {
  std::vector<MassVector> out;
  for (const auto& s : steps) out.emplace_back(s);
  return DemandSequence(m, out);
}

SupplyTrajectory trajectory(const DemandSequence& d, const std::vector<std::vector<Rational>>& steps) {
  std::vector<SharedMass> out;
  for (const auto& s : steps) out.push_back(std::make_shared<const MassVector>(s));
  return SupplyTrajectory(out, d);
}

DemandSequence random_sequence(fixtures::Rng& rng, const MetricSpace& m, std::size_t T, int den) {
  std::vector<MassVector> steps;
  for (std::size_t t = 0; t < T; ++t) steps.push_back(fixtures::random_mass(rng, m.size(), den));
  return DemandSequence(m, steps);
}

SupplyTrajectory random_trajectory(fixtures::Rng& rng, const DemandSequence& d, int den) {
  std::vector<SharedMass> steps;
  for (std::size_t t = 0; t < d.length(); ++t) {
    steps.push_back(std::make_shared<const MassVector>(fixtures::random_mass(rng, d.metric().size(), den)));
  }
  return SupplyTrajectory(steps, d);
}

// Welfare of the best k=2 supply sequence whose first-vertex mass is a
// multiple of 1/4, by enumeration. Moving x mass costs l * x.
Rational grid_optimum(const DemandSequence& d) {
  const Rational l = d.metric().distance(0, 1);
  const std::size_t T = d.length();
  std::vector<int> a(T, 0);
  std::optional<Rational> best;
  std::function<void(std::size_t)> rec = [&](std::size_t t) {
    if (t == T) {
      Rational sw = 0;
      for (std::size_t u = 0; u < T; ++u) {
        Rational s0 = q(a[u], 4), s1 = 1 - s0;
        sw += min_of(s0, d[u][0]) + min_of(s1, d[u][1]);
        if (u > 0) sw -= l * abs(Rational(q(a[u], 4) - q(a[u - 1], 4)));
      }
      if (!best || sw > *best) best = sw;
      return;
    }
    for (int x = 0; x <= 4; ++x) {
      a[t] = x;
      rec(t + 1);
    }
  };
  rec(0);
  return *best;
}

bool on_quarter_grid(const SupplyTrajectory& s) {
  for (std::size_t t = 0; t < s.length(); ++t) {
    for (const auto& x : s[t]) {
      if (Rational(x * 4).get_den() != 1) return false;
    }
  }
  return true;
}

// Sum of served minus moved, recomputed from the flows.
Rational recomputed_sw(const SupplyTrajectory& s, const DemandSequence& d) {
  Rational sw = demand_served(s[0], d[0]);
  for (std::size_t t = 1; t < s.length(); ++t) sw += demand_served(s[t], d[t]) - s.flow(t, d.metric()).cost();
  return sw;
}

}  // namespace

TEST(DemandSequence, RejectsEmptyOrMismatched) {
  EXPECT_THROW(DemandSequence(MetricSpace::uniform(2), std::vector<MassVector>{}), InputError);
  EXPECT_THROW(DemandSequence(MetricSpace::uniform(2), {MassVector::uniform(3)}), InputError);
  auto d = DemandSequence(MetricSpace::uniform(2), {MassVector::uniform(2)});
  EXPECT_THROW(SupplyTrajectory({}, d), InputError);
}

TEST(OnlineAlgorithms, StayServesItsShare) {
  fixtures::Rng rng(1);
  auto d = gen_single_vertex(4, 30, rng);
  auto s = run_stay(d);
  for (const auto& x : s.served()) EXPECT_EQ(x, q(1, 4));
  EXPECT_EQ(s.total_sw(), q(30, 4));
  auto flat = DemandSequence(MetricSpace::uniform(3), std::vector<MassVector>(5, MassVector::uniform(3)));
  EXPECT_EQ(run_stay(flat).total_sw(), 5);
}

TEST(OnlineAlgorithms, StayServesAtLeastRhoOverK) {
  fixtures::Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = fixtures::uniform_int(rng, 1, 6);
    auto d = random_sequence(rng, fixtures::random_metric(rng, k), 6, fixtures::uniform_int(rng, 1, 12));
    const Rational bound = sequence_stats(d).rho / static_cast<unsigned long>(k);
    auto stay = run_stay(d);
    for (const auto& x : stay.served()) EXPECT_GE(x, bound);
  }
}

TEST(OnlineAlgorithms, MatchOnConstantDemandLosesNothing) {
  auto d = DemandSequence(MetricSpace::uniform(3), std::vector<MassVector>(7, MassVector({q(1, 2), q(1, 3), q(1, 6)})));
  EXPECT_EQ(run_match(d).total_sw(), 7);
}

TEST(OnlineAlgorithms, MatchPaysExactlyTheDrift) {
  fixtures::Rng rng(3);
  for (auto delta : {q(1, 20), q(1, 10), q(1, 5), q(1, 2)}) {
    auto d = gen_drift(delta, 300, rng);
    auto stats = sequence_stats(d);
    EXPECT_EQ(run_match(d).total_sw(), (1 - stats.delta) * 300);
  }
}

TEST(OnlineAlgorithms, MatchOnGeneralMetricsMeetsTheDriftBound) {
  fixtures::Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = fixtures::random_metric(rng, fixtures::uniform_int(rng, 2, 5));
    auto d = random_sequence(rng, m, 8, 6);
    auto stats = sequence_stats(d);
    EXPECT_GE(run_match(d).total_sw(), (1 - stats.delta * stats.max_length) * 8);
  }
}

TEST(OnlineAlgorithms, RandExtremes) {
  fixtures::Rng rng(5);
  auto d = gen_single_vertex(5, 40, rng);
  EXPECT_EQ(run_rand(d, 1.0, 9).total_sw(), run_match(d).total_sw());
  auto frozen = run_rand(d, 0.0, 9);
  for (std::size_t t = 0; t < frozen.length(); ++t) EXPECT_EQ(frozen[t], d[0]);
  EXPECT_THROW(run_rand(d, 1.5, 9), InputError);
}

TEST(OnlineAlgorithms, SameSeedSameRun) {
  fixtures::Rng rng(6);
  auto d = gen_single_vertex(6, 50, rng);
  auto a = run_comp(d, 0.3, 77), b = run_comp(d, 0.3, 77);
  EXPECT_EQ(a.stayed, b.stayed);
  for (std::size_t t = 0; t < d.length(); ++t) EXPECT_EQ(a.trajectory[t], b.trajectory[t]);
  EXPECT_EQ(run_rand(d, 0.3, 5).total_sw(), run_rand(d, 0.3, 5).total_sw());
}

TEST(OnlineAlgorithms, CompCoinSelectsStayOrRand) {
  fixtures::Rng rng(7);
  auto d = gen_single_vertex(6, 50, rng);
  bool saw_stay = false, saw_rand = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto run = run_comp(d, 1.0, seed);
    const Rational expected = run.stayed ? run_stay(d).total_sw() : run_match(d).total_sw();
    EXPECT_EQ(run.trajectory.total_sw(), expected);
    (run.stayed ? saw_stay : saw_rand) = true;
  }
  EXPECT_TRUE(saw_stay && saw_rand);
}

TEST(OnlineAlgorithms, CompAveragesStayAndRand) {
  fixtures::Rng rng(8);
  auto d = gen_single_vertex(8, 60, rng);
  const double p = 0.35;
  const int runs = 2000;
  std::vector<double> comp, rand;
  Rng a(100), b(200);
  for (int i = 0; i < runs; ++i) {
    comp.push_back(to_double(run_comp(d, p, a).trajectory.total_sw()));
    rand.push_back(to_double(run_rand(d, p, b).total_sw()));
  }
  auto mean_var = [](const std::vector<double>& xs) {
    double m = 0, v = 0;
    for (double x : xs) m += x;
    m /= xs.size();
    for (double x : xs) v += (x - m) * (x - m);
    return std::make_pair(m, v / (xs.size() - 1));
  };
  auto [mc, vc] = mean_var(comp);
  auto [mr, vr] = mean_var(rand);
  const double expected = to_double(run_stay(d).total_sw()) / 2 + mr / 2;
  const double sigma = std::sqrt(vc / runs + vr / 4 / runs);
  EXPECT_NEAR(mc, expected, 3 * sigma);
}

TEST(OnlineAlgorithms, RandKeepsExpectedSupplyAboveWindowBound) {
  fixtures::Rng rng(9);
  auto d = random_sequence(rng, MetricSpace::uniform(3), 12, 4);
  const double p = 0.4;
  const std::size_t n = 3;
  const int runs = 1500;
  const auto T = d.length();
  std::vector<std::vector<double>> sum(T, std::vector<double>(3)), sq = sum;
  Rng r(31);
  for (int i = 0; i < runs; ++i) {
    auto s = run_rand(d, p, r);
    for (std::size_t t = 0; t < T; ++t) {
      for (Vertex v = 0; v < 3; ++v) {
        double x = to_double(s[t][v]);
        sum[t][v] += x;
        sq[t][v] += x * x;
      }
    }
  }
  auto diag = lazy_diagnostics(run_stay(d), d, n);
  for (std::size_t t = 0; t < T; ++t) {
    for (Vertex v = 0; v < 3; ++v) {
      double mean = sum[t][v] / runs;
      double sd = std::sqrt(std::max(0.0, sq[t][v] / runs - mean * mean) / runs);
      double bound = to_double(diag.g[t][v]) * p * std::pow(1 - p, static_cast<double>(n));
      EXPECT_GE(mean + 3 * sd, bound) << "t=" << t << " v=" << v;
    }
  }
}

TEST(SurgeForStep, HoldUsesUnitPrices) {
  auto m = MetricSpace::uniform(3);
  MassVector s({q(1, 2), q(1, 2), 0}), d({0, q(1, 4), q(3, 4)});
  auto r = surge_prices_for_step(s, s, d, m);
  EXPECT_EQ(r.price, (std::vector<Rational>{1, 1, 1}));
  EXPECT_TRUE(verify_equilibrium_continuous(s, s, r, d, m).ok());
}

TEST(SurgeForStep, MatchStepReproducesTheWorkedExample) {
  auto r = surge_prices_for_step(fixtures::example_demand(), fixtures::example_supply(), fixtures::example_demand(),
                                 fixtures::example_metric(), ZeroDemandPrice::One);
  EXPECT_EQ(r.price, (std::vector<Rational>{1, 1, 1, 4, 3, 2}));
}

TEST(SurgeForStep, Preconditions) {
  MetricSpace half(Matrix{{0, q(1, 2)}, {q(1, 2), 0}});
  MassVector s({1, 0}), d({0, 1});
  EXPECT_THROW(surge_prices_for_step(s, s, d, half), UnsupportedError);
  EXPECT_THROW(surge_prices_for_step(MassVector({q(1, 2), q(1, 2)}), s, d, half), InputError);
}

TEST(SurgeForStep, HoldIsAnEquilibriumOnUnitMinMetrics) {
  fixtures::Rng rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = fixtures::uniform_int(rng, 2, 5);
    std::vector<surgeflow::WeightedEdge> edges;
    for (Vertex u = 0; u < k; ++u) {
      for (Vertex v = u + 1; v < k; ++v) edges.push_back({u, v, q(fixtures::uniform_int(rng, 2, 8), 2)});
    }
    auto m = MetricSpace::from_edges(k, edges);
    auto s = fixtures::random_mass(rng, k), d = fixtures::random_mass(rng, k);
    EXPECT_NO_THROW(surge_prices_for_step(s, s, d, m));
  }
}

TEST(OfflineOptimum, ConstantDemandScoresT) {
  MassVector d({q(1, 2), q(1, 3), q(1, 6)});
  auto seq = DemandSequence(fixtures::random_metric(*std::make_unique<fixtures::Rng>(3), 3),
                            std::vector<MassVector>(9, d));
  EXPECT_EQ(offline_opt(seq).total_sw(), 9);
}

TEST(OfflineOptimum, AlternatingDemandOnTwoVertices) {
  auto m = MetricSpace::uniform(2);
  auto d = sequence(m, {{1, 0}, {0, 1}, {1, 0}, {0, 1}});
  auto opt = offline_opt(d);
  EXPECT_EQ(opt.total_sw(), grid_optimum(d));
  EXPECT_EQ(opt.total_sw(), 2);
}

TEST(OfflineOptimum, AgreesWithQuarterGridSearch) {
  fixtures::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational l = q(fixtures::uniform_int(rng, 1, 6), 2);
    MetricSpace m(Matrix{{0, l}, {l, 0}});
    const int den = fixtures::uniform_int(rng, 0, 1) ? 4 : fixtures::uniform_int(rng, 1, 6);
    auto d = random_sequence(rng, m, fixtures::uniform_int(rng, 1, 3), den);
    auto opt = offline_opt(d);
    auto grid = grid_optimum(d);
    EXPECT_GE(opt.total_sw(), grid) << "trial " << trial;
    if (on_quarter_grid(opt)) EXPECT_EQ(opt.total_sw(), grid) << "trial " << trial;
    if (den == 4) EXPECT_EQ(opt.total_sw(), grid) << "trial " << trial;
  }
}

TEST(OfflineOptimum, DominatesEveryOnlineRun) {
  fixtures::Rng rng(12);
  for (int trial = 0; trial < 80; ++trial) {
    auto m = fixtures::random_metric(rng, fixtures::uniform_int(rng, 2, 5));
    auto d = random_sequence(rng, m, fixtures::uniform_int(rng, 1, 8), fixtures::uniform_int(rng, 1, 6));
    auto opt = offline_opt(d);
    EXPECT_EQ(recomputed_sw(opt, d), opt.total_sw());
    EXPECT_GE(opt.total_sw(), run_stay(d).total_sw());
    EXPECT_GE(opt.total_sw(), run_match(d).total_sw());
    EXPECT_GE(opt.total_sw(), run_rand(d, 0.5, trial).total_sw());
  }
}

TEST(OfflineOptimum, BlockShortcutMatchesTheNetwork) {
  fixtures::Rng rng(13);
  OptOptions network_only;
  network_only.allow_block_shortcut = false;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = fixtures::uniform_int(rng, 2, 8);
    const std::size_t T = fixtures::uniform_int(rng, 1, 30);
    DemandSequence d = trial % 3 == 0   ? gen_single_vertex(k, T, rng)
                       : trial % 3 == 1 ? gen_subset(q(fixtures::uniform_int(rng, 2, 2 * static_cast<int>(k)), 2), k, T, rng)
                                        : gen_geometric(q(1, fixtures::uniform_int(rng, 2, 5)), k, T, rng);
    auto fast = offline_opt(d);
    auto slow = offline_opt(d, network_only);
    EXPECT_EQ(fast.total_sw(), slow.total_sw()) << "trial " << trial;
    EXPECT_EQ(recomputed_sw(fast, d), fast.total_sw());
  }
}

TEST(OfflineOptimum, SizeCap) {
  fixtures::Rng rng(14);
  auto d = gen_drift(q(1, 10), 50, rng, 3);
  OptOptions tiny;
  tiny.max_arcs = 100;
  EXPECT_THROW(offline_opt(d, tiny), SizeLimitError);
}

TEST(Lazify, LazyInputIsUnchanged) {
  auto m = MetricSpace::uniform(2);
  auto d = sequence(m, {{1, 0}, {0, 1}, {0, 1}});
  auto s = run_match(d);
  ASSERT_TRUE(verify_lazy(s, d).ok());
  auto lazy = lazify(s, d);
  for (std::size_t t = 0; t < s.length(); ++t) EXPECT_EQ(lazy[t], s[t]);
}

TEST(Lazify, OvershootIsRepaired) {
  auto m = MetricSpace::uniform(2);
  auto d = sequence(m, {{1, 0}, {q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}});
  // Moves everything to vertex 2, overshooting its demand of 1/2.
  auto s = trajectory(d, {{1, 0}, {0, 1}, {q(1, 2), q(1, 2)}});
  EXPECT_FALSE(verify_lazy(s, d).ok());
  auto lazy = lazify(s, d);
  EXPECT_TRUE(verify_lazy(lazy, d).ok());
  EXPECT_GE(lazy.total_sw(), s.total_sw());
  EXPECT_EQ(lazy[1], MassVector({q(1, 2), q(1, 2)}));
  EXPECT_EQ(lazy.total_sw(), q(5, 2));
}

TEST(Lazify, OverDrainIsRepaired) {
  auto m = MetricSpace::uniform(2);
  auto d = sequence(m, {{1, 0}, {q(3, 4), q(1, 4)}});
  auto s = trajectory(d, {{1, 0}, {q(1, 4), q(3, 4)}});
  EXPECT_FALSE(verify_lazy(s, d).ok());
  auto lazy = lazify(s, d);
  EXPECT_TRUE(verify_lazy(lazy, d).ok());
  EXPECT_EQ(lazy[1], MassVector({q(3, 4), q(1, 4)}));
  EXPECT_GT(lazy.total_sw(), s.total_sw());
}

TEST(Lazify, RandomTrajectoriesBecomeLazyWithoutLosingWelfare) {
  fixtures::Rng rng(15);
  for (int trial = 0; trial < 150; ++trial) {
    auto m = fixtures::random_metric(rng, fixtures::uniform_int(rng, 2, 5));
    auto d = random_sequence(rng, m, fixtures::uniform_int(rng, 1, 7), fixtures::uniform_int(rng, 1, 6));
    auto s = random_trajectory(rng, d, fixtures::uniform_int(rng, 1, 6));
    auto lazy = lazify(s, d);
    EXPECT_TRUE(verify_lazy(lazy, d).ok()) << "trial " << trial;
    EXPECT_GE(lazy.total_sw(), s.total_sw()) << "trial " << trial;
    EXPECT_EQ(recomputed_sw(lazy, d), lazy.total_sw());
  }
}

TEST(Lazify, OptimumKeepsItsWelfareAndTheLazyIdentities) {
  fixtures::Rng rng(16);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t k = fixtures::uniform_int(rng, 2, 5);
    auto d = random_sequence(rng, MetricSpace::uniform(k), fixtures::uniform_int(rng, 1, 12),
                             fixtures::uniform_int(rng, 1, 8));
    auto opt = offline_opt(d);
    auto lazy = lazify(opt, d);
    EXPECT_EQ(lazy.total_sw(), opt.total_sw());
    EXPECT_TRUE(verify_lazy(lazy, d).ok());
    for (std::size_t n : {1, 2, 4, 8}) {
      auto diag = lazy_diagnostics(lazy, d, n);
      EXPECT_EQ(diag.h_total(), lazy.total_sw()) << "trial " << trial;
      EXPECT_LE(diag.max_window_z_sum(), 1) << "trial " << trial << " n=" << n;
    }
  }
}

TEST(LazyDiagnostics, DefinitionsOnASmallCase) {
  auto m = MetricSpace::uniform(2);
  auto d = sequence(m, {{1, 0}, {0, 1}, {q(1, 2), q(1, 2)}});
  auto s = trajectory(d, {{q(1, 4), q(3, 4)}, {q(1, 4), q(3, 4)}, {q(1, 2), q(1, 2)}});
  auto diag = lazy_diagnostics(s, d, 1);
  EXPECT_EQ(diag.h[0], (std::vector<Rational>{q(1, 4), 0}));  // uses s^1 for s^0
  EXPECT_EQ(diag.h[1], (std::vector<Rational>{0, q(3, 4)}));
  EXPECT_EQ(diag.g[0], (std::vector<Rational>{0, 0}));
  EXPECT_EQ(diag.g[2], (std::vector<Rational>{0, 1}));
  EXPECT_EQ(diag.z[2], (std::vector<Rational>{q(1, 4), 0}));
  EXPECT_EQ(diag.h_total(), q(1, 4) + q(3, 4) + q(1, 4) + q(1, 2));
  EXPECT_THROW(lazy_diagnostics(s, d, 0), InputError);
}

TEST(Generators, SingleVertexHasRhoOne) {
  fixtures::Rng rng(17);
  auto d = gen_single_vertex(7, 100, rng);
  for (std::size_t t = 0; t < d.length(); ++t) {
    int ones = 0;
    for (const auto& x : d[t]) ones += x == 1;
    EXPECT_EQ(ones, 1);
  }
  EXPECT_EQ(sequence_stats(d).rho, 1);
}

TEST(Generators, SubsetUsesCeilingBlocks) {
  fixtures::Rng rng(18);
  auto d = gen_subset(q(5, 2), 10, 200, rng);
  EXPECT_EQ(sequence_stats(d).rho, 3);
  // Blocks {0,1,2}, {3,4,5}, {6,7,8}; vertex 9 never has demand.
  for (std::size_t t = 0; t < d.length(); ++t) {
    EXPECT_EQ(d[t][9], 0);
    int first = -1;
    for (Vertex v = 0; v < 9; ++v) {
      if (d[t][v] > 0 && first < 0) first = static_cast<int>(v);
    }
    EXPECT_EQ(first % 3, 0);
  }
  EXPECT_THROW(gen_subset(q(11), 10, 5, rng), InputError);
  EXPECT_THROW(gen_subset(q(1, 2), 10, 5, rng), InputError);
}

TEST(Generators, DriftAveragesDelta) {
  fixtures::Rng rng(19);
  const std::size_t T = 10000;
  for (auto delta : {q(1, 20), q(1, 10), q(1, 5)}) {
    auto d = gen_drift(delta, T, rng);
    // Per-step drift is 2 delta with probability 1/2 (after the first step).
    const double dd = to_double(delta);
    const double sigma = std::sqrt(4 * dd * dd * 0.25 / (T - 1));
    EXPECT_NEAR(to_double(sequence_stats(d).delta) * T / (T - 1), dd, 3 * sigma);
  }
  EXPECT_THROW(gen_drift(q(3, 5), 10, rng), InputError);
  EXPECT_THROW(gen_drift(q(-1, 5), 10, rng), InputError);
}

TEST(Generators, GeometricRunsHaveMeanOnePlusEpsilon) {
  fixtures::Rng rng(20);
  for (auto eps : {q(1, 4), q(1, 2)}) {
    auto d = gen_geometric(eps, 20, 20000, rng);
    EXPECT_EQ(d.metric().uniform_length(), std::optional<Rational>(1 + eps));
    std::vector<double> runs;
    std::size_t len = 1;
    for (std::size_t t = 1; t < d.length(); ++t) {
      if (d[t] == d[t - 1]) {
        ++len;
      } else {
        runs.push_back(static_cast<double>(len));
        len = 1;
      }
    }
    double mean = 0, var = 0;
    for (double r : runs) mean += r;
    mean /= runs.size();
    for (double r : runs) var += (r - mean) * (r - mean);
    var /= runs.size() - 1;
    EXPECT_NEAR(mean, to_double(1 + eps), 3 * std::sqrt(var / runs.size()));
  }
  EXPECT_THROW(gen_geometric(q(1), 5, 5, rng), InputError);
  EXPECT_THROW(gen_geometric(q(0), 5, 5, rng), InputError);
}

TEST(SequenceStats, Basics) {
  auto constant = DemandSequence(MetricSpace::uniform(3), std::vector<MassVector>(4, MassVector::uniform(3)));
  EXPECT_EQ(sequence_stats(constant).delta, 0);
  EXPECT_EQ(sequence_stats(constant).rho, 3);
  auto d = sequence(MetricSpace::uniform(2), {{1, 0}, {0, 1}, {0, 1}, {q(1, 2), q(1, 2)}});
  EXPECT_EQ(sequence_stats(d).delta, q(3, 8));
  EXPECT_EQ(sequence_stats(d).rho, 1);
}

TEST(Experiment, SpecParsing) {
  auto g = parse_generator_spec("drift:delta=0.1,T=1000");
  EXPECT_EQ(g.kind, GeneratorKind::Drift);
  EXPECT_EQ(g.delta, q(1, 10));
  EXPECT_EQ(g.T, 1000u);
  EXPECT_EQ(g.k, 2u);
  EXPECT_EQ(parse_generator_spec(to_string(g)).delta, g.delta);
  auto s = parse_generator_spec("subset:k=100,rho=4,T=50");
  EXPECT_EQ(s.rho, 4);
  EXPECT_EQ(parse_generator_spec("geometric:eps=1/4,k=20,T=9").epsilon, q(1, 4));
  EXPECT_FALSE(parse_algorithm_spec("comp:p=auto").p.has_value());
  EXPECT_EQ(parse_algorithm_spec("rand:p=0.5").p, std::optional<double>(0.5));
  EXPECT_THROW(parse_generator_spec("drift:delta=0.9,T=10"), InputError);
  EXPECT_THROW(parse_generator_spec("single:k=3"), InputError);
  EXPECT_THROW(parse_generator_spec("single:k=3,T=4,x=1"), InputError);
  EXPECT_THROW(parse_generator_spec("wave:k=3,T=4"), InputError);
  EXPECT_THROW(parse_algorithm_spec("rand"), InputError);
  EXPECT_THROW(parse_algorithm_spec("rand:p=2"), InputError);
}

TEST(Experiment, SerialAndParallelAreByteIdentical) {
  auto g = parse_generator_spec("single:k=9,T=200");
  auto a = parse_algorithm_spec("comp");
  ExperimentOptions serial, parallel;
  serial.exec = Execution::Serial;
  parallel.exec = Execution::Parallel;
  std::ostringstream x, y;
  write_csv(competitive_experiment(g, a, 12, 5, serial), x);
  write_csv(competitive_experiment(g, a, 12, 5, parallel), y);
  EXPECT_EQ(x.str(), y.str());
  std::ostringstream z;
  write_csv(competitive_experiment(g, a, 12, 6, serial), z);
  EXPECT_NE(x.str(), z.str());
}

TEST(Experiment, MatchIsOneMinusDeltaCompetitiveOnDrift) {
  auto summary = competitive_experiment(parse_generator_spec("drift:delta=0.1,T=400"),
                                        parse_algorithm_spec("match"), 20, 3);
  for (const auto& r : summary.trials) {
    EXPECT_GE(r.ratio(), 1 - r.delta);
    EXPECT_GE(r.sw_opt, r.sw_alg);
  }
  EXPECT_LE(summary.ratio_ci_low, summary.mean_ratio);
  EXPECT_GE(summary.ratio_ci_high, summary.mean_ratio);
}

TEST(Experiment, CsvAndPlotData) {
  ExperimentOptions opts;
  opts.keep_series = true;
  auto summary = competitive_experiment(parse_generator_spec("single:k=3,T=4"), parse_algorithm_spec("stay"), 2, 1, opts);
  std::ostringstream csv, plot;
  write_csv(summary, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "trial,T,k,rho,delta,sw_alg,sw_opt,ratio");
  EXPECT_NE(csv.str().find("\n0,4,3,1,"), std::string::npos);
  write_plot_data(summary, plot);
  EXPECT_NE(plot.str().find("\"served\""), std::string::npos);
  EXPECT_EQ(summary.trials[0].alg_series.served.size(), 4u);
}

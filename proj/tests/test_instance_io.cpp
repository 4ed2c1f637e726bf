#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "surgeflow/errors.hpp"
#include "surgeflow/instance_io.hpp"

using namespace surgeflow;
using fixtures::q;
using nlohmann::json;

namespace {

json small_continuous() {
  return json::parse(R"({
    "schema_version": "1",
    "metric": {"labels": ["a", "b", "c"], "matrix": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]]},
    "supply": ["1/2", "1/2", "0"],
    "demand": ["0", "1/4", "3/4"]
  })");
}

json small_discrete() {
  return json::parse(R"({
    "schema_version": "1",
    "metric": {"labels": ["a", "b"], "edges": [{"from": "a", "to": "b", "length": "1"}]},
    "passengers": [{"id": "p1", "location": "a", "value": "5"}, {"id": "p2", "location": 1, "value": "3"}],
    "taxicabs": [{"id": "t1", "location": "b"}],
    "surge": [null, "3"]
  })");
}

void expect_rejected(const json& j, const std::string& fragment) {
  try {
    parse_instance(j);
    FAIL() << "accepted: " << j.dump();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

bool same_instance(const InstanceFile& a, const InstanceFile& b) {
  if (a.metric.matrix() != b.metric.matrix() || a.metric.labels() != b.metric.labels()) return false;
  if (a.supply != b.supply || a.demand != b.demand || a.surge != b.surge) return false;
  if (a.discrete.has_value() != b.discrete.has_value()) return false;
  if (!a.discrete) return true;
  const auto &x = *a.discrete, &y = *b.discrete;
  if (x.passengers().size() != y.passengers().size() || x.taxicabs().size() != y.taxicabs().size()) return false;
  for (std::size_t i = 0; i < x.passengers().size(); ++i) {
    const auto &p = x.passengers()[i], &r = y.passengers()[i];
    if (p.id != r.id || p.location != r.location || p.value != r.value) return false;
  }
  for (std::size_t j = 0; j < x.taxicabs().size(); ++j) {
    if (x.taxicabs()[j].id != y.taxicabs()[j].id || x.taxicabs()[j].location != y.taxicabs()[j].location) return false;
  }
  return true;
}

}  // namespace

TEST(InstanceIo, BundledRoadNetworkMatchesWorkedExample) {
  const auto inst = read_instance(SURGEFLOW_DATA_DIR "/paper_fig1.json");
  const auto expected = fixtures::example_metric();
  EXPECT_EQ(inst.metric.matrix(), expected.matrix());
  EXPECT_EQ(inst.metric.labels(), expected.labels());
  ASSERT_TRUE(inst.is_continuous());
  EXPECT_EQ(*inst.supply, fixtures::example_supply());
  EXPECT_EQ(*inst.demand, fixtures::example_demand());
  EXPECT_FALSE(inst.surge.has_value());
}

TEST(InstanceIo, TamperedFileCarriesLoweredSurge) {
  const auto inst = read_instance(SURGEFLOW_DATA_DIR "/tampered.json");
  ASSERT_TRUE(inst.surge.has_value());
  EXPECT_EQ(*(*inst.surge)[3], 3);
}

TEST(InstanceIo, ParsesDiscreteWithLabelsAndIndices) {
  const auto inst = parse_instance(small_discrete());
  ASSERT_FALSE(inst.is_continuous());
  ASSERT_TRUE(inst.discrete.has_value());
  EXPECT_EQ(inst.discrete->passengers()[1].location, 1u);
  EXPECT_EQ(inst.discrete->passengers()[0].value, 5);
  EXPECT_EQ(inst.discrete->taxicabs()[0].location, 1u);
  EXPECT_FALSE((*inst.surge)[0].has_value());
  EXPECT_EQ(*(*inst.surge)[1], 3);
}

TEST(InstanceIo, RejectsMassesNotSummingToOne) {
  auto j = small_continuous();
  j["demand"] = {"0", "0.24", "0.75"};
  expect_rejected(j, "/demand");
}

TEST(InstanceIo, RejectsNegativeDistance) {
  auto j = small_continuous();
  j["metric"]["matrix"][0][1] = "-1";
  expect_rejected(j, "negative distance");
  auto e = small_discrete();
  e["metric"]["edges"][0]["length"] = "-1/2";
  expect_rejected(e, "negative distance");
}

TEST(InstanceIo, NonMetricMatrixNeedsClosure) {
  auto j = small_continuous();
  j["metric"]["matrix"][0][2] = "5";
  j["metric"]["matrix"][2][0] = "5";
  EXPECT_THROW(parse_instance(j), InputError);
  j["metric"]["closure"] = true;
  const auto inst = parse_instance(j);
  EXPECT_EQ(inst.metric.distance(0, 2), 2);
}

TEST(InstanceIo, ClosureFillsMissingRoads) {
  auto j = small_continuous();
  j["metric"]["matrix"][0][2] = nullptr;
  j["metric"]["matrix"][2][0] = nullptr;
  expect_rejected(j, "/metric/matrix/0/2");
  j["metric"]["closure"] = true;
  EXPECT_EQ(parse_instance(j).metric.distance(2, 0), 2);
}

TEST(InstanceIo, RejectsMixedOrMissingParts) {
  auto both = small_continuous();
  both["passengers"] = json::array();
  both["taxicabs"] = json::array();
  expect_rejected(both, "not both");
  auto neither = small_continuous();
  neither.erase("supply");
  neither.erase("demand");
  expect_rejected(neither, "not both");
  auto half = small_continuous();
  half.erase("demand");
  expect_rejected(half, "missing \"demand\"");
}

TEST(InstanceIo, RejectsSchemaProblems) {
  auto j = small_continuous();
  j["schema_version"] = "2";
  expect_rejected(j, "/schema_version");
  j = small_continuous();
  j["extra"] = 1;
  expect_rejected(j, "/extra");
  j = small_continuous();
  j["supply"] = {"1/2", "1/2"};
  expect_rejected(j, "expected 3 entries");
  j = small_continuous();
  j["supply"][0] = "half";
  expect_rejected(j, "/supply/0");
  auto d = small_discrete();
  d["passengers"][0]["location"] = "z";
  expect_rejected(d, "unknown vertex");
  d = small_discrete();
  d["taxicabs"][0]["location"] = 7;
  expect_rejected(d, "out of range");
  j = small_continuous();
  j["surge"] = {"1", nullptr, "1"};
  expect_rejected(j, "/surge/1");
}

TEST(InstanceIo, SyntaxErrorsReportLineAndColumn) {
  try {
    parse_instance_text("{\n  \"schema_version\": \"1\",\n  \"metric\": [\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
}

TEST(InstanceIo, RoundTripFixedInstances) {
  for (const auto& j : {small_continuous(), small_discrete()}) {
    const auto first = parse_instance(j);
    const auto second = parse_instance_text(to_json(first).dump());
    EXPECT_TRUE(same_instance(first, second)) << j.dump();
  }
  const auto fig = read_instance(SURGEFLOW_DATA_DIR "/paper_fig1.json");
  EXPECT_TRUE(same_instance(fig, parse_instance(to_json(fig))));
}

// Random rational metrics, masses and passenger lists survive
// serialize -> parse exactly.
TEST(InstanceIo, RoundTripRandomInstances) {
  std::mt19937_64 rng(11);
  auto small = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = static_cast<std::size_t>(small(1, 5));
    // Points on a line give a metric with arbitrary rational gaps.
    std::vector<Rational> pos(k);
    for (auto& p : pos) p = q(small(-20, 20), small(1, 7));
    std::vector<std::vector<Rational>> dist(k, std::vector<Rational>(k));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) dist[a][b] = abs(pos[a] - pos[b]);
    }
    bool distinct = true;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) distinct = distinct && pos[a] != pos[b];
    }
    if (!distinct) continue;
    MetricSpace m(dist);
    auto mass = [&] {
      std::vector<Rational> w(k);
      Rational total = 0;
      for (auto& x : w) total += x = q(small(0, 9), small(1, 5));
      if (total == 0) w[0] = total = 1;
      for (auto& x : w) x /= total;
      return MassVector(w);
    };
    InstanceFile inst{kSchemaVersion, m, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    if (trial % 2 == 0) {
      inst.supply = mass();
      inst.demand = mass();
      std::vector<std::optional<Rational>> r;
      for (std::size_t v = 0; v < k; ++v) r.emplace_back(q(small(0, 30), small(1, 4)));
      inst.surge = r;
    } else {
      std::vector<Passenger> ps;
      std::vector<Taxicab> ts;
      for (long i = 0, n = small(0, 4); i < n; ++i) {
        ps.push_back({"p" + std::to_string(i), static_cast<Vertex>(small(0, k - 1)), q(small(0, 40), small(1, 3))});
      }
      for (long j = 0, n = small(0, 4); j < n; ++j) {
        ts.push_back({"t" + std::to_string(j), static_cast<Vertex>(small(0, k - 1))});
      }
      inst.discrete = DiscreteInstance(m, ps, ts);
    }
    const auto back = parse_instance_text(to_json(inst).dump(1));
    EXPECT_TRUE(same_instance(inst, back)) << to_json(inst).dump();
  }
}

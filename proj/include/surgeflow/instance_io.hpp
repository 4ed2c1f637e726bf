#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "surgeflow/mass_vector.hpp"
#include "surgeflow/metric_space.hpp"
#include "surgeflow/surge_continuous.hpp"
#include "surgeflow/surge_discrete.hpp"

namespace surgeflow {

inline constexpr const char* kSchemaVersion = "1";

/// One problem instance on disk. Exactly one of the continuous part (supply
/// and demand) and the discrete part (passengers and taxicabs) is present.
///
/// Layout, all rationals as "p/q" strings:
///   {"schema_version": "1",
///    "metric": {"labels": [...], "matrix": [[...]], "closure": false}
///           or {"labels": [...], "edges": [{"from", "to", "length"}]},
///    "supply": [...], "demand": [...],
///    "passengers": [{"id", "location", "value"}], "taxicabs": [{"id", "location"}],
///    "surge": [...]}
/// "surge" is optional and only read by verification; entries may be null
/// in discrete files. Locations and edge endpoints are vertex labels or
/// 0-based indices.
struct InstanceFile {
  std::string schema_version;
  MetricSpace metric;
  std::optional<MassVector> supply;
  std::optional<MassVector> demand;
  std::optional<DiscreteInstance> discrete;
  std::optional<std::vector<std::optional<Rational>>> surge;

  bool is_continuous() const { return supply.has_value(); }
};

/// Validates and builds the domain objects. Throws InputError naming the
/// offending JSON location, or the parser's line and column.
InstanceFile parse_instance(const nlohmann::json& j);
InstanceFile parse_instance_text(const std::string& text);
InstanceFile read_instance(const std::filesystem::path& path);

/// Always writes the metric as a closed matrix.
nlohmann::json to_json(const InstanceFile& inst);

nlohmann::json to_json(const ContinuousSurge& result, const EquilibriumReport& equilibrium, const MetricSpace& m);
nlohmann::json to_json(const DiscreteInstance& inst, const DiscreteSolution& solution,
                       const std::vector<std::pair<std::string, CheckReport>>& reports);

}  // namespace surgeflow

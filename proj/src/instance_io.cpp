#include "surgeflow/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "surgeflow/errors.hpp"

namespace surgeflow {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, "missing \"" + key + "\"");
  return *it;
}

const json& array_at(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

Rational rational_at(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) schema_error(where, "expected a rational string such as \"3/8\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    schema_error(where, e.what());
  }
}

std::vector<Rational> rationals_at(const json& j, const std::string& where) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
    out.push_back(rational_at(j[i], where + "/" + std::to_string(i)));
  }
  return out;
}

std::vector<std::string> labels_at(const json& metric, std::size_t k, const std::string& where) {
  auto it = metric.find("labels");
  if (it == metric.end()) return {};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array_at(*it, where + "/labels").size(); ++i) {
    if (!(*it)[i].is_string()) schema_error(where + "/labels/" + std::to_string(i), "expected a string");
    out.push_back((*it)[i].get<std::string>());
  }
  if (k != 0 && out.size() != k) schema_error(where + "/labels", "expected " + std::to_string(k) + " labels");
  return out;
}

// A label, or a 0-based index when the value is an integer.
Vertex vertex_at(const json& j, const std::vector<std::string>& labels, std::size_t k, const std::string& where) {
  if (j.is_number_integer()) {
    const auto v = j.get<long>();
    if (v < 0 || static_cast<std::size_t>(v) >= k) schema_error(where, "vertex index out of range");
    return static_cast<Vertex>(v);
  }
  if (!j.is_string()) schema_error(where, "expected a vertex label");
  const auto name = j.get<std::string>();
  for (Vertex v = 0; v < labels.size(); ++v) {
    if (labels[v] == name) return v;
  }
  schema_error(where, "unknown vertex \"" + name + "\"");
}

MetricSpace metric_at(const json& j) {
  const std::string where = "/metric";
  if (!j.is_object()) schema_error(where, "expected an object");
  const bool has_matrix = j.contains("matrix"), has_edges = j.contains("edges");
  if (has_matrix == has_edges) schema_error(where, "give exactly one of \"matrix\" and \"edges\"");

  try {
    if (has_matrix) {
      const json& rows = array_at(j["matrix"], where + "/matrix");
      const std::size_t k = rows.size();
      auto labels = labels_at(j, k, where);
      const bool closure = j.value("closure", false);
      std::vector<std::vector<std::optional<Rational>>> raw(k);
      for (std::size_t a = 0; a < k; ++a) {
        const std::string row_at = where + "/matrix/" + std::to_string(a);
        if (array_at(rows[a], row_at).size() != k) schema_error(row_at, "expected " + std::to_string(k) + " entries");
        raw[a].resize(k);
        for (std::size_t b = 0; b < k; ++b) {
          // null marks a missing road, allowed only when closing.
          if (rows[a][b].is_null() && closure) continue;
          raw[a][b] = rational_at(rows[a][b], row_at + "/" + std::to_string(b));
          if (*raw[a][b] < 0) schema_error(row_at + "/" + std::to_string(b), "negative distance");
        }
      }
      if (closure) return MetricSpace(shortest_path_closure(raw), std::move(labels));
      std::vector<std::vector<Rational>> dist(k, std::vector<Rational>(k));
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) dist[a][b] = *raw[a][b];
      }
      return MetricSpace(std::move(dist), std::move(labels));
    }

    auto labels = labels_at(j, 0, where);
    std::size_t k = labels.size();
    if (j.contains("vertex_count")) {
      if (!j["vertex_count"].is_number_unsigned()) schema_error(where + "/vertex_count", "expected a count");
      k = j["vertex_count"].get<std::size_t>();
      if (!labels.empty() && labels.size() != k) schema_error(where + "/labels", "does not match vertex_count");
    }
    if (k == 0) schema_error(where, "edge lists need \"labels\" or \"vertex_count\"");
    std::vector<WeightedEdge> edges;
    const json& list = array_at(j["edges"], where + "/edges");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = where + "/edges/" + std::to_string(i);
      if (!list[i].is_object()) schema_error(at, "expected an object");
      WeightedEdge e{vertex_at(member(list[i], "from", at), labels, k, at + "/from"),
                     vertex_at(member(list[i], "to", at), labels, k, at + "/to"),
                     rational_at(member(list[i], "length", at), at + "/length")};
      if (e.length < 0) schema_error(at + "/length", "negative distance");
      edges.push_back(std::move(e));
    }
    return MetricSpace::from_edges(k, edges, std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    schema_error(where, e.what());
  }
}

MassVector mass_at(const json& j, const std::string& key, std::size_t k) {
  const std::string where = "/" + key;
  auto values = rationals_at(j, where);
  if (values.size() != k) schema_error(where, "expected " + std::to_string(k) + " entries");
  try {
    return MassVector(std::move(values));
  } catch (const InputError& e) {
    schema_error(where, e.what());
  }
}

DiscreteInstance discrete_at(const json& j, MetricSpace metric) {
  const auto& labels = metric.labels();
  const std::size_t k = metric.size();
  std::vector<Passenger> passengers;
  const json& ps = array_at(member(j, "passengers", ""), "/passengers");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string at = "/passengers/" + std::to_string(i);
    if (!ps[i].is_object()) schema_error(at, "expected an object");
    const json& id = member(ps[i], "id", at);
    if (!id.is_string()) schema_error(at + "/id", "expected a string");
    passengers.push_back({id.get<std::string>(), vertex_at(member(ps[i], "location", at), labels, k, at + "/location"),
                          rational_at(member(ps[i], "value", at), at + "/value")});
  }
  std::vector<Taxicab> taxicabs;
  const json& ts = array_at(member(j, "taxicabs", ""), "/taxicabs");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string at = "/taxicabs/" + std::to_string(i);
    if (!ts[i].is_object()) schema_error(at, "expected an object");
    const json& id = member(ts[i], "id", at);
    if (!id.is_string()) schema_error(at + "/id", "expected a string");
    taxicabs.push_back({id.get<std::string>(), vertex_at(member(ts[i], "location", at), labels, k, at + "/location")});
  }
  return DiscreteInstance(std::move(metric), std::move(passengers), std::move(taxicabs));
}

json rationals_json(std::span<const Rational> values) {
  json out = json::array();
  for (const auto& x : values) out.push_back(to_string(x));
  return out;
}

json matrix_json(const std::vector<std::vector<Rational>>& rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back(rationals_json(row));
  return out;
}

json report_json(const CheckReport& r) { return {{"ok", r.ok()}, {"issues", r.issues}}; }

const char* zero_demand_name(ZeroDemandPrice z) {
  switch (z) {
    case ZeroDemandPrice::Zero:
      return "zero";
    case ZeroDemandPrice::One:
      return "one";
    case ZeroDemandPrice::CMinusZero:
      return "c-minus-zero";
  }
  return "";
}

}  // namespace

InstanceFile parse_instance(const json& j) {
  if (!j.is_object()) schema_error("/", "expected an object");
  const json& version = member(j, "schema_version", "");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    schema_error("/schema_version", std::string("expected \"") + kSchemaVersion + "\"");
  }
  static const char* const known[] = {"schema_version", "metric", "supply", "demand", "passengers", "taxicabs", "surge"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return item.key() == k; }) ==
        std::end(known)) {
      schema_error("/" + item.key(), "unknown field");
    }
  }

  const bool continuous = j.contains("supply") || j.contains("demand");
  const bool discrete = j.contains("passengers") || j.contains("taxicabs");
  if (continuous == discrete) {
    schema_error("/", "give either supply and demand, or passengers and taxicabs, but not both");
  }

  MetricSpace metric = metric_at(member(j, "metric", ""));
  const std::size_t k = metric.size();
  InstanceFile out{version.get<std::string>(), metric, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  if (continuous) {
    out.supply = mass_at(member(j, "supply", ""), "supply", k);
    out.demand = mass_at(member(j, "demand", ""), "demand", k);
  } else {
    out.discrete = discrete_at(j, std::move(metric));
  }

  if (auto it = j.find("surge"); it != j.end()) {
    const json& r = array_at(*it, "/surge");
    if (r.size() != k) schema_error("/surge", "expected " + std::to_string(k) + " entries");
    std::vector<std::optional<Rational>> surge;
    for (std::size_t v = 0; v < k; ++v) {
      const std::string at = "/surge/" + std::to_string(v);
      if (r[v].is_null()) {
        if (continuous) schema_error(at, "continuous surge entries cannot be null");
        surge.emplace_back();
      } else {
        surge.emplace_back(rational_at(r[v], at));
      }
    }
    out.surge = std::move(surge);
  }
  return out;
}

InstanceFile parse_instance_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(j);
}

InstanceFile read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_instance_text(text.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

json to_json(const InstanceFile& inst) {
  json out;
  out["schema_version"] = inst.schema_version;
  out["metric"] = {{"labels", inst.metric.labels()}, {"matrix", matrix_json(inst.metric.matrix())}, {"closure", false}};
  if (inst.supply) out["supply"] = rationals_json(inst.supply->values());
  if (inst.demand) out["demand"] = rationals_json(inst.demand->values());
  if (inst.discrete) {
    const auto& labels = inst.metric.labels();
    json ps = json::array(), ts = json::array();
    for (const auto& p : inst.discrete->passengers()) {
      ps.push_back({{"id", p.id}, {"location", labels[p.location]}, {"value", to_string(p.value)}});
    }
    for (const auto& t : inst.discrete->taxicabs()) ts.push_back({{"id", t.id}, {"location", labels[t.location]}});
    out["passengers"] = ps;
    out["taxicabs"] = ts;
  }
  if (inst.surge) {
    json r = json::array();
    for (const auto& x : *inst.surge) r.push_back(x ? json(to_string(*x)) : json(nullptr));
    out["surge"] = r;
  }
  return out;
}

json to_json(const ContinuousSurge& result, const EquilibriumReport& equilibrium, const MetricSpace& m) {
  json flow = json::array();
  for (const auto& e : result.solution.flow.entries()) {
    flow.push_back({{"from", m.label(e.from)}, {"to", m.label(e.to)}, {"amount", to_string(e.amount)}});
  }
  const auto& mkt = result.market.market;
  json violations = json::array();
  for (const auto& v : equilibrium.violations) {
    violations.push_back({{"origin", m.label(v.origin)},
                          {"flowed_to", m.label(v.flowed_to)},
                          {"better", m.label(v.better)},
                          {"gap", to_string(v.gap)}});
  }
  json matching = json::array();
  for (std::size_t b = 0; b < mkt.bidder_count(); ++b) {
    const auto& item = result.matching.item_of[b];
    matching.push_back({{"bidder", mkt.bidders()[b]}, {"item", item ? json(mkt.items()[*item]) : json(nullptr)}});
  }
  return {{"flow", {{"entries", flow}, {"cost", to_string(result.solution.flow.cost())}}},
          {"market",
           {{"bidders", mkt.bidders()},
            {"items", mkt.items()},
            {"valuation", matrix_json(mkt.valuation())},
            {"c", to_string(result.market.c)}}},
          {"matching", matching},
          {"prices", rationals_json(result.prices.price)},
          {"surge", rationals_json(result.surge.price)},
          {"zero_demand_price", zero_demand_name(result.surge.zero_demand)},
          {"equilibrium",
           {{"ok", equilibrium.ok()}, {"checked", equilibrium.checked_edge_set}, {"violations", violations}}}};
}

json to_json(const DiscreteInstance& inst, const DiscreteSolution& solution,
             const std::vector<std::pair<std::string, CheckReport>>& reports) {
  const auto& m = inst.metric();
  json assignment = json::array();
  for (std::size_t j = 0; j < inst.taxicabs().size(); ++j) {
    const auto& p = solution.assignment.passenger_of[j];
    assignment.push_back(
        {{"taxicab", inst.taxicabs()[j].id}, {"passenger", p ? json(inst.passengers()[*p].id) : json(nullptr)}});
  }
  json surge = json::array();
  for (const auto& r : solution.surge.price) surge.push_back(r ? json(to_string(*r)) : json(nullptr));
  json checks = json::object();
  for (const auto& [name, report] : reports) checks[name] = report_json(report);
  json supply = json::object();
  for (Vertex v = 0; v < m.size(); ++v) supply[m.label(v)] = solution.assignment.new_supply[v];
  return {{"assignment", assignment},
          {"taxi_prices", rationals_json(solution.taxi_prices.price)},
          {"surge", surge},
          {"new_supply", supply},
          {"welfare", to_string(solution.welfare)},
          {"checks", checks}};
}

}  // namespace surgeflow

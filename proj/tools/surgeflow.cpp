// Command-line front end. Exit codes: 0 success, 1 a verifier reported
// violations, 2 bad input or usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "surgeflow/errors.hpp"
#include "surgeflow/experiment.hpp"
#include "surgeflow/instance_io.hpp"

namespace {

using namespace surgeflow;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kBadInput = 2;

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void print_issues(const std::string& title, const std::vector<std::string>& issues) {
  for (const auto& issue : issues) std::cerr << title << ": " << issue << "\n";
}

std::vector<std::string> equilibrium_issues(const EquilibriumReport& report, const MetricSpace& m) {
  std::vector<std::string> out;
  for (const auto& v : report.violations) {
    out.push_back("taxicabs at " + m.label(v.origin) + " flowing to " + m.label(v.flowed_to) + " gain " +
                  to_string(v.gap) + " by going to " + m.label(v.better));
  }
  return out;
}

int surge_continuous(const std::string& input, ZeroDemandPrice zero_demand, const Output& out) {
  const InstanceFile inst = read_instance(input);
  if (!inst.is_continuous()) throw InputError(input + ": expected supply and demand");
  const auto result = continuous_surge_prices(*inst.supply, *inst.demand, inst.metric, zero_demand);
  const auto report = verify_equilibrium_continuous(*inst.supply, *inst.demand, result.surge, *inst.demand, inst.metric);
  out.write(dump(to_json(result, report, inst.metric)));
  print_issues("equilibrium", equilibrium_issues(report, inst.metric));
  return report.ok() ? kOk : kViolation;
}

std::vector<std::pair<std::string, CheckReport>> discrete_checks(const DiscreteInstance& inst,
                                                                 const DiscreteSolution& sol,
                                                                 const DiscreteSurgeVector& r) {
  const auto mkt = build_discrete_market(inst);
  Matching g;
  g.item_of.assign(inst.passengers().size(), std::nullopt);
  for (std::size_t j = 0; j < inst.taxicabs().size(); ++j) {
    if (auto p = sol.assignment.passenger_of[j]) g.item_of[*p] = j;
  }
  return {{"clearing", verify_clearing(mkt, g, sol.taxi_prices)},
          {"envy_free", verify_envy_free(inst, sol.assignment, r)},
          {"taxi_best_response", verify_taxi_best_response(inst, sol.assignment, sol.taxi_prices, r)},
          {"achieves_min", verify_achieves_min(inst, sol.assignment, sol.taxi_prices, r)}};
}

int report_discrete(const DiscreteInstance& inst, const DiscreteSolution& sol, const DiscreteSurgeVector& r,
                    const Output& out) {
  const auto checks = discrete_checks(inst, sol, r);
  out.write(dump(to_json(inst, sol, checks)));
  bool ok = true;
  for (const auto& [name, report] : checks) {
    print_issues(name, report.issues);
    ok = ok && report.ok();
  }
  return ok ? kOk : kViolation;
}

int surge_discrete(const std::string& input, const Output& out) {
  const InstanceFile inst = read_instance(input);
  if (inst.is_continuous()) throw InputError(input + ": expected passengers and taxicabs");
  const auto sol = solve_discrete(*inst.discrete);
  return report_discrete(*inst.discrete, sol, sol.surge, out);
}

// Checks the surge vector stored in the file against the solver's outcome.
int verify(const std::string& input, const Output& out) {
  const InstanceFile inst = read_instance(input);
  if (!inst.surge) throw InputError(input + ": verify needs a \"surge\" vector");
  if (inst.is_continuous()) {
    SurgeVector r;
    for (const auto& x : *inst.surge) r.price.push_back(*x);
    const auto report = verify_equilibrium_continuous(*inst.supply, *inst.demand, r, *inst.demand, inst.metric);
    json violations = json::array();
    for (const auto& issue : equilibrium_issues(report, inst.metric)) violations.push_back(issue);
    out.write(dump({{"ok", report.ok()}, {"checked", report.checked_edge_set}, {"violations", violations}}));
    print_issues("equilibrium", equilibrium_issues(report, inst.metric));
    return report.ok() ? kOk : kViolation;
  }
  const auto sol = solve_discrete(*inst.discrete);
  DiscreteSurgeVector r{*inst.surge};
  return report_discrete(*inst.discrete, sol, r, out);
}

struct SimulateArgs {
  std::string generator;
  std::string algorithm;
  std::size_t trials = 1;
  std::optional<std::uint64_t> seed;
  std::string plot_data;
  bool serial = false;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SURGEFLOW_SEED")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw InputError("SURGEFLOW_SEED must be a nonnegative integer");
  }
  return 0;
}

int simulate(const SimulateArgs& args, const Output& out) {
  const auto g = parse_generator_spec(args.generator);
  const auto a = parse_algorithm_spec(args.algorithm);
  ExperimentOptions options;
  options.exec = args.serial ? Execution::Serial : Execution::Parallel;
  options.keep_series = !args.plot_data.empty();
  const auto summary = competitive_experiment(g, a, args.trials, resolve_seed(args.seed), options);

  std::ostringstream csv;
  write_csv(summary, csv);
  out.write(csv.str());
  if (!args.plot_data.empty()) {
    std::ostringstream plot;
    write_plot_data(summary, plot);
    Output{args.plot_data}.write(plot.str());
  }
  std::cerr << to_string(a) << " on " << to_string(g) << ": mean ratio " << summary.mean_ratio << " (95% CI "
            << summary.ratio_ci_low << " to " << summary.ratio_ci_high << "), ratio of means "
            << summary.ratio_of_means << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surge pricing solver and online repositioning simulator"};
  app.require_subcommand(1);

  Output out;
  std::string input;
  ZeroDemandPrice zero_demand = ZeroDemandPrice::Zero;
  const std::map<std::string, ZeroDemandPrice> zero_demand_names{
      {"zero", ZeroDemandPrice::Zero}, {"one", ZeroDemandPrice::One}, {"c-minus-zero", ZeroDemandPrice::CMinusZero}};

  auto* surge = app.add_subcommand("surge", "Compute surge prices for an instance");
  surge->require_subcommand(1);
  auto* continuous = surge->add_subcommand("continuous", "Fractional supply and demand");
  continuous->add_option("--input", input, "Instance JSON")->required();
  continuous->add_option("--zero-demand-price", zero_demand, "Price at vertices without demand")
      ->transform(CLI::CheckedTransformer(zero_demand_names, CLI::ignore_case));
  continuous->add_option("--out", out.path, "Output JSON (default stdout)");
  auto* discrete = surge->add_subcommand("discrete", "Atomic passengers and taxicabs");
  discrete->add_option("--input", input, "Instance JSON")->required();
  discrete->add_option("--out", out.path, "Output JSON (default stdout)");

  auto* check = app.add_subcommand("verify", "Check the surge vector stored in an instance");
  check->add_option("--input", input, "Instance JSON with a surge vector")->required();
  check->add_option("--out", out.path, "Report JSON (default stdout)");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Online algorithm against the offline optimum");
  simulate_cmd->add_option("--generator", sim.generator, "e.g. drift:delta=0.1,T=1000")->required();
  simulate_cmd->add_option("--algorithm", sim.algorithm, "stay, match, rand:p=0.3, comp[:p=auto]")->required();
  simulate_cmd->add_option("--trials", sim.trials, "Number of trials")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "Run seed (falls back to SURGEFLOW_SEED, then 0)");
  simulate_cmd->add_option("--out", out.path, "CSV output (default stdout)");
  simulate_cmd->add_option("--emit-plot-data", sim.plot_data, "Write per-step series as JSON");
  simulate_cmd->add_flag("--serial", sim.serial, "Run trials on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (continuous->parsed()) return surge_continuous(input, zero_demand, out);
    if (discrete->parsed()) return surge_discrete(input, out);
    if (check->parsed()) return verify(input, out);
    return simulate(sim, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kBadInput;
  } catch (const SizeLimitError& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return kBadInput;
  } catch (const ContractViolation& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kViolation;
  }
}

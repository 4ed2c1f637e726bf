#include "surgeflow/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <map>

#include <json.hpp>

#include "surgeflow/demand_generators.hpp"
#include "surgeflow/errors.hpp"

namespace surgeflow {
namespace {

using Params = std::map<std::string, std::string, std::less<>>;

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// "name:key=value,key=value" -> name and key/value map.
std::pair<std::string, Params> split_spec(std::string_view text) {
  const auto colon = text.find(':');
  std::string name = trim(text.substr(0, colon));
  Params params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw InputError("expected key=value in spec, got '" + trim(item) + "'");
      std::string key = trim(item.substr(0, eq));
      if (!params.emplace(key, trim(item.substr(eq + 1))).second) throw InputError("duplicate spec key " + key);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  if (name.empty()) throw InputError("spec has no name");
  return {name, params};
}

std::size_t take_count(Params& params, const std::string& key, std::optional<std::size_t> fallback) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (!fallback) throw InputError("spec needs " + key);
    return *fallback;
  }
  Rational value = parse_rational(it->second);
  params.erase(it);
  if (value.get_den() != 1 || value < 1) throw InputError(key + " must be a positive integer");
  return value.get_num().get_ui();
}

Rational take_rational(Params& params, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = params.find(key);
    if (it == params.end()) continue;
    Rational value = parse_rational(it->second);
    params.erase(it);
    return value;
  }
  throw InputError(std::string("spec needs ") + *keys.begin());
}

void reject_leftovers(const Params& params) {
  if (!params.empty()) throw InputError("unknown spec key " + params.begin()->first);
}

double mean_of(const std::vector<double>& xs) {
  double total = 0;
  for (double x : xs) total += x;
  return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

StepSeries series_of(const SupplyTrajectory& s) {
  StepSeries out;
  for (const auto& x : s.served()) out.served.push_back(to_double(x));
  for (const auto& x : s.moved()) out.moved.push_back(to_double(x));
  return out;
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view text) {
  auto [name, params] = split_spec(text);
  GeneratorSpec g;
  if (name == "single") {
    g.kind = GeneratorKind::SingleVertex;
    g.k = take_count(params, "k", std::nullopt);
  } else if (name == "subset") {
    g.kind = GeneratorKind::Subset;
    g.k = take_count(params, "k", std::nullopt);
    g.rho = take_rational(params, {"rho"});
  } else if (name == "geometric") {
    g.kind = GeneratorKind::Geometric;
    g.k = take_count(params, "k", std::nullopt);
    g.epsilon = take_rational(params, {"eps", "epsilon"});
  } else if (name == "drift") {
    g.kind = GeneratorKind::Drift;
    g.k = take_count(params, "k", 2);
    g.delta = take_rational(params, {"delta"});
  } else {
    throw InputError("unknown generator '" + name + "'");
  }
  g.T = take_count(params, "T", std::nullopt);
  reject_leftovers(params);
  // Surface range errors at parse time rather than inside a trial.
  Rng probe(0);
  GeneratorSpec tiny = g;
  tiny.T = 1;
  generate(tiny, probe);
  return g;
}

AlgorithmSpec parse_algorithm_spec(std::string_view text) {
  auto [name, params] = split_spec(text);
  AlgorithmSpec a;
  if (name == "stay") {
    a.kind = AlgorithmKind::Stay;
  } else if (name == "match") {
    a.kind = AlgorithmKind::Match;
  } else if (name == "rand" || name == "comp") {
    a.kind = name == "rand" ? AlgorithmKind::Rand : AlgorithmKind::Comp;
    auto it = params.find("p");
    if (it == params.end() && a.kind == AlgorithmKind::Rand) throw InputError("rand needs p");
    if (it != params.end()) {
      if (it->second != "auto") {
        double p = to_double(parse_rational(it->second));
        if (p < 0 || p > 1) throw InputError("p must lie in [0, 1]");
        a.p = p;
      }
      params.erase(it);
    }
  } else {
    throw InputError("unknown algorithm '" + name + "'");
  }
  reject_leftovers(params);
  return a;
}

std::string to_string(const GeneratorSpec& g) {
  const std::string shape = "k=" + std::to_string(g.k) + ",T=" + std::to_string(g.T);
  switch (g.kind) {
    case GeneratorKind::SingleVertex:
      return "single:" + shape;
    case GeneratorKind::Subset:
      return "subset:rho=" + to_string(g.rho) + "," + shape;
    case GeneratorKind::Geometric:
      return "geometric:eps=" + to_string(g.epsilon) + "," + shape;
    case GeneratorKind::Drift:
      return "drift:delta=" + to_string(g.delta) + "," + shape;
  }
  return "";
}

std::string to_string(const AlgorithmSpec& a) {
  const std::string p = a.p ? decimal(*a.p) : "auto";
  switch (a.kind) {
    case AlgorithmKind::Stay:
      return "stay";
    case AlgorithmKind::Match:
      return "match";
    case AlgorithmKind::Rand:
      return "rand:p=" + p;
    case AlgorithmKind::Comp:
      return "comp:p=" + p;
  }
  return "";
}

DemandSequence generate(const GeneratorSpec& g, Rng& rng) {
  switch (g.kind) {
    case GeneratorKind::SingleVertex:
      return gen_single_vertex(g.k, g.T, rng);
    case GeneratorKind::Subset:
      return gen_subset(g.rho, g.k, g.T, rng);
    case GeneratorKind::Geometric:
      return gen_geometric(g.epsilon, g.k, g.T, rng);
    case GeneratorKind::Drift:
      return gen_drift(g.delta, g.T, rng, g.k);
  }
  throw InputError("unknown generator");
}

SupplyTrajectory run_algorithm(const AlgorithmSpec& a, const DemandSequence& d, Rng& rng) {
  auto probability = [&] {
    if (a.p) return *a.p;
    const Rational rho = sequence_stats(d).rho;
    return std::sqrt(to_double(rho) / static_cast<double>(d.metric().size()));
  };
  switch (a.kind) {
    case AlgorithmKind::Stay:
      return run_stay(d);
    case AlgorithmKind::Match:
      return run_match(d);
    case AlgorithmKind::Rand:
      return run_rand(d, probability(), rng);
    case AlgorithmKind::Comp:
      return run_comp(d, probability(), rng).trajectory;
  }
  throw InputError("unknown algorithm");
}

Rng trial_rng(std::uint64_t seed, std::size_t trial, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), stream};
  return Rng(seq);
}

Rational TrialResult::ratio() const {
  if (sgn(sw_opt) == 0) return sgn(sw_alg) == 0 ? Rational(1) : Rational(0);
  return sw_alg / sw_opt;
}

ExperimentSummary competitive_experiment(const GeneratorSpec& g, const AlgorithmSpec& a, std::size_t trials,
                                         std::uint64_t seed, const ExperimentOptions& options) {
  if (trials == 0) throw InputError("need at least one trial");
  ExperimentSummary out;
  out.trials.resize(trials);
  const auto n = static_cast<std::ptrdiff_t>(trials);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (options.exec == Execution::Parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto trial = static_cast<std::size_t>(i);
      Rng demand_rng = trial_rng(seed, trial, 0);
      Rng alg_rng = trial_rng(seed, trial, 1);
      DemandSequence d = generate(g, demand_rng);
      SupplyTrajectory alg = run_algorithm(a, d, alg_rng);
      SupplyTrajectory opt = offline_opt(d, options.opt);
      auto stats = sequence_stats(d);
      TrialResult& r = out.trials[trial];
      r = {trial, d.length(), d.metric().size(), stats.rho, stats.delta, alg.total_sw(), opt.total_sw(), {}, {}};
      if (options.keep_series) {
        r.alg_series = series_of(alg);
        r.opt_series = series_of(opt);
      }
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> alg, opt, ratio;
  for (const auto& r : out.trials) {
    alg.push_back(to_double(r.sw_alg));
    opt.push_back(to_double(r.sw_opt));
    ratio.push_back(to_double(r.ratio()));
  }
  out.mean_sw_alg = mean_of(alg);
  out.mean_sw_opt = mean_of(opt);
  out.ratio_of_means = out.mean_sw_opt == 0 ? 1.0 : out.mean_sw_alg / out.mean_sw_opt;
  out.mean_ratio = mean_of(ratio);
  double var = 0;
  for (double x : ratio) var += (x - out.mean_ratio) * (x - out.mean_ratio);
  const double se = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  out.ratio_ci_low = out.mean_ratio - 1.96 * se;
  out.ratio_ci_high = out.mean_ratio + 1.96 * se;
  return out;
}

void write_csv(const ExperimentSummary& s, std::ostream& out) {
  out << "trial,T,k,rho,delta,sw_alg,sw_opt,ratio\n";
  for (const auto& r : s.trials) {
    out << r.trial << ',' << r.T << ',' << r.k << ',' << decimal(to_double(r.rho)) << ','
        << decimal(to_double(r.delta)) << ',' << decimal(to_double(r.sw_alg)) << ',' << decimal(to_double(r.sw_opt))
        << ',' << decimal(to_double(r.ratio())) << '\n';
  }
}

void write_plot_data(const ExperimentSummary& s, std::ostream& out) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& r : s.trials) {
    trials.push_back({{"trial", r.trial},
                      {"algorithm", {{"served", r.alg_series.served}, {"moved", r.alg_series.moved}}},
                      {"optimum", {{"served", r.opt_series.served}, {"moved", r.opt_series.moved}}}});
  }
  out << nlohmann::json{{"schema_version", "1"}, {"trials", trials}}.dump(1) << '\n';
}

}  // namespace surgeflow

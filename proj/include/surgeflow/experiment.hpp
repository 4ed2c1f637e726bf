#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "surgeflow/execution.hpp"
#include "surgeflow/online.hpp"

namespace surgeflow {

enum class GeneratorKind { SingleVertex, Subset, Geometric, Drift };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::SingleVertex;
  std::size_t k = 2;
  std::size_t T = 1;
  Rational rho = 1;
  Rational epsilon = Rational(1, 2);
  Rational delta = 0;
};

enum class AlgorithmKind { Stay, Match, Rand, Comp };

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Match;
  /// nullopt means sqrt(rho / k) computed from the demand sequence.
  std::optional<double> p;
};

/// "single:k=25,T=5000", "subset:k=100,rho=4,T=5000",
/// "geometric:eps=1/4,k=20,T=5000", "drift:delta=0.1,T=1000[,k=2]".
GeneratorSpec parse_generator_spec(std::string_view text);

/// "stay", "match", "rand:p=0.5", "comp", "comp:p=auto", "comp:p=0.2".
AlgorithmSpec parse_algorithm_spec(std::string_view text);

std::string to_string(const GeneratorSpec& g);
std::string to_string(const AlgorithmSpec& a);

DemandSequence generate(const GeneratorSpec& g, Rng& rng);

/// Runs the online algorithm; RAND and COMP draw from rng.
SupplyTrajectory run_algorithm(const AlgorithmSpec& a, const DemandSequence& d, Rng& rng);

/// Stream `stream` of trial `trial` under a run seed. Demand uses stream 0,
/// the online algorithm stream 1.
Rng trial_rng(std::uint64_t seed, std::size_t trial, std::uint32_t stream);

struct StepSeries {
  std::vector<double> served;
  std::vector<double> moved;
};

struct TrialResult {
  std::size_t trial;
  std::size_t T;
  std::size_t k;
  Rational rho;
  Rational delta;
  Rational sw_alg;
  Rational sw_opt;
  StepSeries alg_series;  // filled only when series are requested
  StepSeries opt_series;

  /// sw_alg / sw_opt, or 1 when both are zero.
  Rational ratio() const;
};

struct ExperimentSummary {
  std::vector<TrialResult> trials;
  double mean_sw_alg = 0;
  double mean_sw_opt = 0;
  double ratio_of_means = 0;
  double mean_ratio = 0;
  double ratio_ci_low = 0;  // 95% normal approximation
  double ratio_ci_high = 0;
};

struct ExperimentOptions {
  Execution exec = Execution::Parallel;
  bool keep_series = false;
  OptOptions opt;
};

/// Paired trials: each trial draws one demand sequence and scores the online
/// algorithm and the offline optimum on it. Results do not depend on the
/// execution mode or thread schedule.
ExperimentSummary competitive_experiment(const GeneratorSpec& g, const AlgorithmSpec& a, std::size_t trials,
                                         std::uint64_t seed, const ExperimentOptions& options = {});

/// Columns: trial,T,k,rho,delta,sw_alg,sw_opt,ratio.
void write_csv(const ExperimentSummary& s, std::ostream& out);

/// Per-trial served/moved series for both runs, as JSON.
void write_plot_data(const ExperimentSummary& s, std::ostream& out);

}  // namespace surgeflow

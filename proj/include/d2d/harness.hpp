#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/exact.hpp"
#include "d2d/metrics.hpp"
#include "d2d/radio.hpp"
#include "d2d/rforce.hpp"
#include "d2d/scenario.hpp"
#include "d2d/solution.hpp"

namespace d2d {

enum class Algorithm { RForce = 0, KMeans = 1, Exact = 2 };

const char* to_string(Algorithm a);
/// Throws ConfigError for unknown names.
Algorithm parse_algorithm(std::string_view name);

/// Exactly one of `generate` and `file` is set.
struct ScenarioSource {
  std::optional<GenerateOptions> generate;
  std::optional<std::filesystem::path> file;
};

struct RunConfig {
  ScenarioSource scenario{GenerateOptions{}, std::nullopt};
  Algorithm algorithm = Algorithm::RForce;
  RadioParams radio;
  RForceParams rforce;
  ExactSolverConfig exact;
  LifetimeModel lifetime;
  double rho = 20.0;
  double theta = 0.05;
  bool k_sweep = false;
  std::uint64_t base_seed = 1;
  std::size_t n_trials = 1;
  std::vector<std::uint64_t> seeds;  // explicit per-trial base seeds; overrides base_seed/n_trials
  std::filesystem::path out_dir = "out";

  std::size_t trial_count() const { return seeds.empty() ? n_trials : seeds.size(); }
  void validate() const;
};

RunConfig run_config_from_json(std::string_view text);
std::string run_config_to_json(const RunConfig& cfg);
RunConfig load_run_config(const std::filesystem::path& path);

// Seed derivation. Every seed is a pure function of the configuration:
//
//   mix(h, v)       = splitmix64(h ^ (v + 0x9E3779B97F4A7C15))
//   scenario seed   = mix(mix(mix(mix(base, "scen"), N), M), trial)
//   algorithm seed  = mix(mix(mix(mix(mix(base, "algo"), N), M), algorithm), trial)
//
// The scenario seed ignores the algorithm, so every algorithm in a sweep cell
// sees the same scenario realisation for a given trial.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_scenario_seed(std::uint64_t base, std::size_t n_devices, std::size_t n_aps,
                                   std::size_t trial);
std::uint64_t derive_algorithm_seed(std::uint64_t base, std::size_t n_devices, std::size_t n_aps,
                                    Algorithm algorithm, std::size_t trial);

struct AlgorithmOutcome {
  ClusterSolution solution;
  SolutionMetrics metrics;
  double runtime_ms = 0.0;  // algorithm only, excludes generation and I/O
  std::size_t k = 0;        // centroid count used (0 for exact)
  std::optional<ExactStatus> exact_status;
};

EvaluationSettings evaluation_settings(const RunConfig& cfg, Algorithm a);
FeasibilityLimits feasibility_limits(const RunConfig& cfg, Algorithm a);

/// Runs one algorithm on a scenario and evaluates the result.
/// Throws SizeLimitError for the exact solver on oversized scenarios.
AlgorithmOutcome run_algorithm(const Scenario& s, const RunConfig& cfg, Algorithm a,
                               std::uint64_t seed);

/// Builds the scenario a run or trial uses: loaded from file, or generated
/// from the derived scenario seed of (trial_base, N, M, trial_index).
Scenario materialize_scenario(const RunConfig& cfg, std::uint64_t trial_base,
                              std::size_t trial_index);

struct SingleRun {
  Scenario scenario;
  AlgorithmOutcome outcome;
};

/// Trial 0 of the configuration. When `write_outputs` is set, writes
/// scenario.json, solution.json and metrics.json under cfg.out_dir.
SingleRun run_single(const RunConfig& cfg, bool write_outputs = true);

struct SweepSpec {
  std::vector<std::size_t> device_counts;
  std::vector<std::size_t> ap_counts;
  std::vector<Algorithm> algorithms;
};

struct TrialRecord {
  std::size_t n_devices = 0;
  std::size_t n_aps = 0;
  Algorithm algorithm = Algorithm::RForce;
  std::size_t trial = 0;
  bool skipped = false;
  SolutionMetrics metrics;
  double runtime_ms = 0.0;
};

inline constexpr int kSweepCsvVersion = 1;

struct SweepRow {
  std::size_t n_devices = 0;
  std::size_t n_aps = 0;
  Algorithm algorithm = Algorithm::RForce;
  std::size_t trials = 0;  // 0 marks a skipped cell; statistics are NaN
  double mean_failure_cost = 0.0;
  double std_failure_cost = 0.0;
  double mean_sr_bitrate_bps = 0.0;
  double mean_lr_bitrate_bps = 0.0;
  double mean_outage_frac = 0.0;
  double mean_head_lifetime_min = 0.0;
  double mean_objective = 0.0;
  double mean_runtime_ms = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;        // ordered by (N, M, algorithm)
  std::vector<TrialRecord> trials;   // ordered by (N, M, trial, algorithm)
};

/// Every (N, M, trial) task runs all requested algorithms on one shared
/// scenario. Tasks may execute concurrently; results land in fixed slots so
/// the output order and contents do not depend on scheduling.
SweepResult run_sweep(const RunConfig& cfg, const SweepSpec& spec);

/// Aggregates trial records into one row per (N, M, algorithm) cell, with
/// the sample standard deviation of the failure cost.
std::vector<SweepRow> aggregate(const std::vector<TrialRecord>& trials, const SweepSpec& spec);

std::string sweep_csv_header();
/// With `include_timing` false the runtime column is written as 0 so that
/// reruns are byte-identical.
std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool include_timing = true);
std::vector<SweepRow> sweep_from_csv(std::string_view text);

}  // namespace d2d

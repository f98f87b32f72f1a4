#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2d/errors.hpp"
#include "d2d/harness.hpp"
#include "d2d/json_util.hpp"
#include "d2d/metrics.hpp"
#include "d2d/scenario.hpp"
#include "d2d/solution.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> k;
  bool k_sweep = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "run configuration (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "base seed");
  cmd->add_option("--out", f.out, "output directory");
}

void add_algorithm_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--k", f.k, "centroid count override")->check(CLI::PositiveNumber);
  cmd->add_flag("--k-sweep", f.k_sweep, "try K0-2..K0+2 and keep the best objective");
}

d2d::RunConfig base_config(const CommonFlags& f) {
  d2d::RunConfig cfg = f.config.empty() ? d2d::RunConfig{} : d2d::load_run_config(f.config);
  if (f.seed) {
    cfg.seeds.clear();
    cfg.base_seed = *f.seed;
  }
  if (f.trials) {
    cfg.seeds.clear();
    cfg.n_trials = *f.trials;
  }
  if (f.k) cfg.rforce.k_centroids = *f.k;
  if (f.k_sweep) cfg.k_sweep = true;
  if (!f.out.empty()) cfg.out_dir = f.out;
  return cfg;
}

void print_metrics(const d2d::SolutionMetrics& m, std::size_t k, double runtime_ms) {
  std::printf("heads                %d\n", m.n_heads);
  std::printf("centroids            %zu\n", k);
  std::printf("failure cost         %.6f\n", m.total_failure_cost);
  std::printf("avg SR bitrate (bps) %.6g\n", m.avg_sr_bitrate);
  std::printf("avg LR bitrate (bps) %.6g\n", m.avg_lr_bitrate);
  std::printf("outage fraction      %.4f\n", m.outage_fraction);
  std::printf("head lifetime (min)  %.3f\n", m.avg_head_lifetime);
  std::printf("objective            %.6f\n", m.objective);
  std::printf("runtime (ms)         %.3f\n", runtime_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"d2dsim: reliability-aware D2D cluster formation simulator"};
  app.require_subcommand(1);

  // generate
  CommonFlags gen_flags;
  std::size_t gen_devices = 200;
  std::size_t gen_aps = 1;
  auto* gen = app.add_subcommand("generate", "generate a random scenario");
  add_common(gen, gen_flags);
  gen->add_option("--devices", gen_devices, "number of devices")->check(CLI::PositiveNumber);
  gen->add_option("--aps", gen_aps, "number of access points")->check(CLI::PositiveNumber);

  // run
  CommonFlags run_flags;
  std::optional<std::size_t> run_devices;
  std::optional<std::size_t> run_aps;
  std::string run_algo;
  std::string run_scenario;
  auto* run = app.add_subcommand("run", "run one algorithm on one scenario");
  add_common(run, run_flags);
  add_algorithm_flags(run, run_flags);
  run->add_option("--devices", run_devices, "number of devices")->check(CLI::PositiveNumber);
  run->add_option("--aps", run_aps, "number of access points")->check(CLI::PositiveNumber);
  run->add_option("--algo", run_algo, "rforce | kmeans | exact");
  run->add_option("--scenario", run_scenario, "load the scenario from a file")->check(CLI::ExistingFile);

  // sweep
  CommonFlags sweep_flags;
  std::vector<std::size_t> sweep_devices{50, 100, 150, 200, 250};
  std::vector<std::size_t> sweep_aps{1};
  std::vector<std::string> sweep_algos{"rforce", "kmeans"};
  bool no_timing = false;
  bool write_trials = false;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over device/AP counts and algorithms");
  add_common(sweep, sweep_flags);
  add_algorithm_flags(sweep, sweep_flags);
  sweep->add_option("--trials", sweep_flags.trials, "trials per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--devices", sweep_devices, "device counts")->delimiter(',');
  sweep->add_option("--aps", sweep_aps, "AP counts")->delimiter(',');
  sweep->add_option("--algo", sweep_algos, "algorithms")->delimiter(',');
  sweep->add_flag("--no-timing", no_timing, "write 0 in the runtime column");
  sweep->add_flag("--trial-records", write_trials, "also write per-trial records");

  // check
  std::string check_scenario;
  std::string check_solution;
  std::string check_config;
  std::string check_algo = "rforce";
  auto* check = app.add_subcommand("check", "feasibility-check a solution file");
  check->add_option("--scenario", check_scenario, "scenario file")->required()->check(CLI::ExistingFile);
  check->add_option("--solution", check_solution, "solution file")->required()->check(CLI::ExistingFile);
  check->add_option("--config", check_config, "run configuration (limits)")->check(CLI::ExistingFile);
  check->add_option("--algo", check_algo, "algorithm whose capacity limits apply");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      d2d::RunConfig cfg = base_config(gen_flags);
      d2d::GenerateOptions g = cfg.scenario.generate.value_or(d2d::GenerateOptions{});
      if (gen->count("--devices")) g.n_devices = gen_devices;
      if (gen->count("--aps")) g.n_aps = gen_aps;
      g.ap_tx_power = cfg.radio.ap_tx_power;
      g.seed = cfg.base_seed;
      const d2d::Scenario s = d2d::generate_scenario(g);
      const auto path = cfg.out_dir / "scenario.json";
      d2d::save_scenario(s, path);
      std::printf("wrote %s (%zu devices, %zu APs)\n", path.string().c_str(), s.n_devices(), s.n_aps());
      return 0;
    }

    if (*run) {
      d2d::RunConfig cfg = base_config(run_flags);
      if (!run_algo.empty()) cfg.algorithm = d2d::parse_algorithm(run_algo);
      if (!run_scenario.empty()) {
        cfg.scenario.generate.reset();
        cfg.scenario.file = run_scenario;
      } else if (cfg.scenario.generate) {
        if (run_devices) cfg.scenario.generate->n_devices = *run_devices;
        if (run_aps) cfg.scenario.generate->n_aps = *run_aps;
      }
      const d2d::SingleRun r = d2d::run_single(cfg, true);
      std::printf("algorithm            %s\n", d2d::to_string(cfg.algorithm));
      if (r.outcome.exact_status) {
        std::printf("exact status         %s\n", d2d::to_string(*r.outcome.exact_status));
      }
      print_metrics(r.outcome.metrics, r.outcome.k, r.outcome.runtime_ms);
      std::printf("wrote %s\n", cfg.out_dir.string().c_str());
      return 0;
    }

    if (*sweep) {
      d2d::RunConfig cfg = base_config(sweep_flags);
      d2d::SweepSpec spec;
      spec.device_counts = sweep_devices;
      spec.ap_counts = sweep_aps;
      for (const auto& a : sweep_algos) spec.algorithms.push_back(d2d::parse_algorithm(a));
      const d2d::SweepResult res = d2d::run_sweep(cfg, spec);
      const std::string csv = d2d::sweep_to_csv(res.rows, !no_timing);
      d2d::json_util::write_file(cfg.out_dir / "sweep.csv", csv);

      nlohmann::json manifest;
      manifest["csv_version"] = d2d::kSweepCsvVersion;
      manifest["columns"] = d2d::sweep_csv_header();
      manifest["device_counts"] = spec.device_counts;
      manifest["ap_counts"] = spec.ap_counts;
      manifest["algorithms"] = sweep_algos;
      manifest["trials"] = cfg.trial_count();
      manifest["timing"] = !no_timing;
      manifest["config"] = nlohmann::json::parse(d2d::run_config_to_json(cfg));
      d2d::json_util::write_file(cfg.out_dir / "sweep_manifest.json", manifest.dump(2) + "\n");

      if (write_trials) {
        nlohmann::json records = nlohmann::json::array();
        for (const auto& t : res.trials) {
          nlohmann::json rec{{"n_devices", t.n_devices}, {"n_aps", t.n_aps},
                             {"algorithm", d2d::to_string(t.algorithm)}, {"trial", t.trial},
                             {"skipped", t.skipped}};
          if (!t.skipped) {
            rec["metrics"] = nlohmann::json::parse(d2d::metrics_to_json(t.metrics));
            rec["runtime_ms"] = no_timing ? 0.0 : t.runtime_ms;
          }
          records.push_back(rec);
        }
        d2d::json_util::write_file(cfg.out_dir / "trials.json", records.dump(2) + "\n");
      }
      std::fputs(csv.c_str(), stdout);
      return 0;
    }

    if (*check) {
      d2d::RunConfig cfg = check_config.empty() ? d2d::RunConfig{} : d2d::load_run_config(check_config);
      const d2d::Scenario s = d2d::load_scenario(check_scenario);
      const d2d::ClusterSolution sol = d2d::load_solution(check_solution);
      const auto limits = d2d::feasibility_limits(cfg, d2d::parse_algorithm(check_algo));
      const d2d::FeasibilityReport rep = d2d::check_feasibility(sol, s, cfg.radio, limits);
      std::fputs(d2d::feasibility_summary(rep).c_str(), stdout);
      return rep.all_passed() ? 0 : 1;
    }
  } catch (const d2d::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "d2d/errors.hpp"
#include "d2d/harness.hpp"
#include "d2d/json_util.hpp"

using namespace d2d;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("d2d_test_harness_" + name);
  std::filesystem::remove_all(p);
  return p;
}

RunConfig small_config(std::size_t n, std::size_t trials) {
  RunConfig cfg;
  cfg.scenario.generate->n_devices = n;
  cfg.n_trials = trials;
  cfg.base_seed = 2024;
  return cfg;
}

}  // namespace

TEST_CASE("algorithm names") {
  for (auto a : {Algorithm::RForce, Algorithm::KMeans, Algorithm::Exact}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK_THROWS_AS(parse_algorithm("dbscan"), ConfigError);
}

TEST_CASE("config defaults match the reference parameters") {
  const RunConfig cfg = run_config_from_json("{}");
  CHECK(cfg.rho == 20.0);
  CHECK(cfg.theta == 0.05);
  CHECK(cfg.rforce.delta_lr == 30);
  CHECK(cfg.rforce.delta_sr == 10);
  CHECK(cfg.rforce.lambda == 0.8);
  CHECK(cfg.rforce.eta == 0.4);
  CHECK(cfg.radio.ap_tx_power == 10.0);
  CHECK(cfg.radio.dev_tx_power == 0.22);
  CHECK(cfg.radio.noise == 1e-9);
  CHECK(cfg.radio.beta == 0.3);
  CHECK(cfg.exact.node_limit == 10);
  CHECK(cfg.scenario.generate.has_value());
  CHECK(cfg.scenario.generate->n_devices == 200);
  CHECK(cfg.trial_count() == 1);
}

TEST_CASE("config parsing") {
  const RunConfig cfg = run_config_from_json(R"({
    "scenario": {"generate": {"n_devices": 50, "n_aps": 4}},
    "algorithm": "kmeans",
    "rforce": {"k_centroids": 7, "attraction": "all", "parallel": true, "rescue": false},
    "exact": {"node_limit": 8},
    "rho": 10, "theta": 0.1, "k_sweep": true,
    "seeds": {"base_seed": 99, "n_trials": 25},
    "output": {"dir": "results"}
  })");
  CHECK(cfg.scenario.generate->n_devices == 50);
  CHECK(cfg.scenario.generate->n_aps == 4);
  CHECK(cfg.algorithm == Algorithm::KMeans);
  CHECK(cfg.rforce.k_centroids == 7);
  CHECK(cfg.rforce.scope == AttractionScope::AllDevices);
  CHECK(cfg.rforce.execution == Execution::Parallel);
  CHECK_FALSE(cfg.rforce.rescue_outage);
  CHECK(cfg.exact.node_limit == 8);
  CHECK(cfg.rho == 10.0);
  CHECK(cfg.k_sweep);
  CHECK(cfg.base_seed == 99);
  CHECK(cfg.trial_count() == 25);
  CHECK(cfg.out_dir == "results");

  const RunConfig again = run_config_from_json(run_config_to_json(cfg));
  CHECK(run_config_to_json(again) == run_config_to_json(cfg));
}

TEST_CASE("explicit seed lists") {
  const RunConfig cfg = run_config_from_json(R"({"seeds": [5, 6, 7]})");
  CHECK(cfg.trial_count() == 3);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{5, 6, 7});
  CHECK_THROWS_AS(run_config_from_json(R"({"seeds": [5, -1]})"), ParseError);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(run_config_from_json(R"({"algorithm": "annealing"})"), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(R"({"rfroce": {}})"), ParseError);
  CHECK_THROWS_AS(run_config_from_json(R"({"scenario": {}})"), ConfigError);
  CHECK_THROWS_AS(
      run_config_from_json(R"({"scenario": {"file": "a.json", "generate": {}}})"), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(R"({"seeds": {"n_trials": 0}})"), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(R"({"theta": 2})"), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(R"({"rforce": {"attraction": "some"}})"), ConfigError);
  CHECK_THROWS_AS(run_config_from_json("{"), ParseError);
}

TEST_CASE("seed derivation is pure and separates cells") {
  CHECK(derive_scenario_seed(1, 200, 1, 0) == derive_scenario_seed(1, 200, 1, 0));
  std::set<std::uint64_t> seen;
  for (std::size_t n : {50, 100}) {
    for (std::size_t m : {1, 4}) {
      for (std::size_t t = 0; t < 5; ++t) seen.insert(derive_scenario_seed(7, n, m, t));
    }
  }
  CHECK(seen.size() == 20);
  CHECK(derive_algorithm_seed(7, 50, 1, Algorithm::RForce, 0) !=
        derive_algorithm_seed(7, 50, 1, Algorithm::KMeans, 0));
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("single run writes populated documents") {
  RunConfig cfg;
  cfg.out_dir = scratch("single");
  const auto run = run_single(cfg);
  CHECK(run.scenario.n_devices() == 200);
  for (const char* f : {"scenario.json", "solution.json", "metrics.json"}) {
    CHECK(std::filesystem::exists(cfg.out_dir / f));
  }
  const auto m = metrics_from_json(json_util::read_file(cfg.out_dir / "metrics.json"));
  CHECK(m == run.outcome.metrics);
  CHECK(m.n_heads > 0);
  CHECK(m.avg_sr_bitrate > 0.0);
  CHECK(m.avg_lr_bitrate > 0.0);
  CHECK(m.avg_head_lifetime > 0.0);
  CHECK(m.total_failure_cost > 0.0);
  CHECK(load_solution(cfg.out_dir / "solution.json") == run.outcome.solution);
  std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("identical runs produce identical bytes") {
  RunConfig a, b;
  a.out_dir = scratch("det_a");
  b.out_dir = scratch("det_b");
  a.base_seed = b.base_seed = 31;
  run_single(a);
  run_single(b);
  for (const char* f : {"scenario.json", "solution.json", "metrics.json"}) {
    CHECK(json_util::read_file(a.out_dir / f) == json_util::read_file(b.out_dir / f));
  }
  std::filesystem::remove_all(a.out_dir);
  std::filesystem::remove_all(b.out_dir);
}

TEST_CASE("exact on 200 devices is refused") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::Exact;
  CHECK_THROWS_AS(run_single(cfg, false), SizeLimitError);
}

TEST_CASE("scenario files are used as given") {
  const auto dir = scratch("file_source");
  GenerateOptions g;
  g.n_devices = 30;
  g.seed = 4;
  const auto s = generate_scenario(g);
  save_scenario(s, dir / "s.json");
  RunConfig cfg;
  cfg.scenario.generate.reset();
  cfg.scenario.file = dir / "s.json";
  cfg.out_dir = dir / "out";
  CHECK(run_single(cfg).scenario == s);
  cfg.scenario.file = dir / "missing.json";
  CHECK_THROWS(run_single(cfg));
  std::filesystem::remove_all(dir);
}

TEST_CASE("sweep over the reference grid") {
  RunConfig cfg = small_config(200, 25);
  SweepSpec spec{{50, 100, 150, 200, 250}, {1}, {Algorithm::RForce, Algorithm::KMeans}};
  const auto res = run_sweep(cfg, spec);
  REQUIRE(res.rows.size() == 10);
  CHECK(res.trials.size() == 250);
  for (const auto& r : res.rows) {
    CHECK(r.trials == 25);
    CHECK(r.std_failure_cost > 0.0);
  }
  CHECK(res.rows[0].n_devices == 50);
  CHECK(res.rows[0].algorithm == Algorithm::RForce);
  CHECK(res.rows[1].algorithm == Algorithm::KMeans);
  CHECK(res.rows[9].n_devices == 250);
}

TEST_CASE("single cell with one trial") {
  RunConfig cfg = small_config(80, 1);
  SweepSpec spec{{80}, {1}, {Algorithm::RForce}};
  const auto res = run_sweep(cfg, spec);
  REQUIRE(res.rows.size() == 1);
  REQUIRE(res.trials.size() == 1);
  CHECK(res.rows[0].mean_failure_cost == res.trials[0].metrics.total_failure_cost);
  CHECK(res.rows[0].mean_objective == res.trials[0].metrics.objective);
  CHECK(res.rows[0].std_failure_cost == 0.0);
}

TEST_CASE("algorithms in a cell share the scenario") {
  RunConfig cfg = small_config(60, 3);
  const auto s0 = materialize_scenario(cfg, cfg.base_seed, 0);
  const auto s1 = materialize_scenario(cfg, cfg.base_seed, 1);
  CHECK_FALSE(s0 == s1);
  const auto seed = derive_algorithm_seed(cfg.base_seed, 60, 1, Algorithm::KMeans, 0);
  SweepSpec spec{{60}, {1}, {Algorithm::RForce, Algorithm::KMeans}};
  const auto res = run_sweep(cfg, spec);
  const auto direct = run_algorithm(s0, cfg, Algorithm::KMeans, seed);
  CHECK(res.trials[1].algorithm == Algorithm::KMeans);
  CHECK(res.trials[1].trial == 0);
  CHECK(res.trials[1].metrics == direct.metrics);
}

TEST_CASE("reruns and thread counts give identical CSV bytes") {
  RunConfig cfg = small_config(10, 4);
  SweepSpec spec{{30, 60}, {1, 4}, {Algorithm::RForce, Algorithm::KMeans}};
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto a = sweep_to_csv(run_sweep(cfg, spec).rows, false);
  omp_set_num_threads(4);
  const auto b = sweep_to_csv(run_sweep(cfg, spec).rows, false);
  omp_set_num_threads(threads);
  CHECK(a == b);
}

TEST_CASE("oversized exact cells are skipped") {
  RunConfig cfg = small_config(10, 2);
  SweepSpec spec{{6, 20}, {1}, {Algorithm::Exact, Algorithm::RForce}};
  const auto res = run_sweep(cfg, spec);
  REQUIRE(res.rows.size() == 4);
  CHECK(res.rows[0].trials == 2);
  CHECK(res.rows[2].algorithm == Algorithm::Exact);
  CHECK(res.rows[2].trials == 0);
  CHECK(std::isnan(res.rows[2].mean_failure_cost));
  CHECK(res.rows[3].trials == 2);
}

TEST_CASE("sweep rejects bad counts") {
  RunConfig cfg = small_config(10, 1);
  CHECK_THROWS_AS(run_sweep(cfg, SweepSpec{{0}, {1}, {Algorithm::RForce}}), ConfigError);
  CHECK_THROWS_AS(run_sweep(cfg, SweepSpec{{10}, {0}, {Algorithm::RForce}}), ConfigError);
}

TEST_CASE("CSV rows parse back") {
  RunConfig cfg = small_config(10, 3);
  SweepSpec spec{{5, 40}, {1}, {Algorithm::RForce, Algorithm::KMeans, Algorithm::Exact}};
  const auto rows = run_sweep(cfg, spec).rows;
  const auto csv = sweep_to_csv(rows, true);
  CHECK(csv.rfind(sweep_csv_header() + "\n", 0) == 0);
  const auto back = sweep_from_csv(csv);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].n_devices == rows[i].n_devices);
    CHECK(back[i].algorithm == rows[i].algorithm);
    CHECK(back[i].trials == rows[i].trials);
    if (rows[i].trials > 0) {
      CHECK(back[i].mean_failure_cost == rows[i].mean_failure_cost);
      CHECK(back[i].mean_objective == rows[i].mean_objective);
      CHECK(back[i].mean_runtime_ms == rows[i].mean_runtime_ms);
    } else {
      CHECK(std::isnan(back[i].mean_failure_cost));
    }
  }
  CHECK_THROWS_AS(sweep_from_csv("n_devices,oops\n"), ParseError);
  CHECK_THROWS_AS(sweep_from_csv(sweep_csv_header() + "\n1,1,rforce\n"), ParseError);
}

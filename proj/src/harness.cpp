#include "d2d/harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "d2d/errors.hpp"
#include "d2d/json_util.hpp"
#include "d2d/kmeans.hpp"

namespace d2d {

using json_util::json;

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::RForce: return "rforce";
    case Algorithm::KMeans: return "kmeans";
    case Algorithm::Exact: return "exact";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "rforce") return Algorithm::RForce;
  if (name == "kmeans") return Algorithm::KMeans;
  if (name == "exact") return Algorithm::Exact;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected rforce, kmeans or exact)");
}

// ---------------------------------------------------------------------------
// Configuration

void RunConfig::validate() const {
  if (scenario.generate.has_value() == scenario.file.has_value()) {
    throw ConfigError("config: exactly one scenario source (generate or file) is required");
  }
  if (scenario.generate) {
    const auto& g = *scenario.generate;
    if (!(g.area_width > 0.0) || !(g.area_height > 0.0)) {
      throw ConfigError("config: scenario area must have positive width and height");
    }
    if (g.n_devices < 1 || g.n_aps < 1) throw ConfigError("config: device and AP counts must be >= 1");
    if (!(0.0 <= g.battery_lo && g.battery_lo <= g.battery_hi && g.battery_hi <= 1.0)) {
      throw ConfigError("config: battery range must satisfy 0 <= lo <= hi <= 1");
    }
  }
  if (trial_count() < 1) throw ConfigError("config: at least one trial is required");
  if (!(rho >= 0.0)) throw ConfigError("config: rho must be >= 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("config: theta must lie in [0,1]");
  radio.validate();
  rforce.validate();
  ExactSolverConfig e = exact;
  e.rho = rho;
  e.theta = theta;
  e.validate();
  if (!(lifetime.capacity_mah > 0.0) || !(lifetime.draw_current_a > 0.0)) {
    throw ConfigError("config: lifetime constants must be positive");
  }
}

namespace {

AttractionScope parse_scope(const std::string& s) {
  if (s == "members") return AttractionScope::ClusterMembers;
  if (s == "all") return AttractionScope::AllDevices;
  throw ConfigError("config: rforce.attraction must be 'members' or 'all'");
}

const char* scope_name(AttractionScope s) {
  return s == AttractionScope::AllDevices ? "all" : "members";
}

std::size_t get_count(const json& obj, const char* key, std::size_t fallback, const std::string& where) {
  const auto v = json_util::get_integer_or(obj, key, static_cast<std::int64_t>(fallback), where);
  if (v < 0) throw ParseError(where + "." + key + ": must be non-negative");
  return static_cast<std::size_t>(v);
}

}  // namespace

RunConfig run_config_from_json(std::string_view text) {
  using namespace json_util;
  const json doc = parse_document(text, "config");
  require_keys(doc,
               {"scenario", "algorithm", "radio", "rforce", "exact", "lifetime", "rho", "theta",
                "k_sweep", "seeds", "output"},
               "");
  RunConfig cfg;

  if (doc.contains("scenario")) {
    const json& sc = doc.at("scenario");
    require_keys(sc, {"generate", "file"}, "scenario");
    cfg.scenario = {};
    if (sc.contains("generate")) {
      const json& g = sc.at("generate");
      const std::string w = "scenario.generate";
      require_keys(g, {"n_devices", "n_aps", "area_width", "area_height", "battery_lo", "battery_hi"}, w);
      GenerateOptions o;
      o.n_devices = get_count(g, "n_devices", o.n_devices, w);
      o.n_aps = get_count(g, "n_aps", o.n_aps, w);
      o.area_width = get_number_or(g, "area_width", o.area_width, w);
      o.area_height = get_number_or(g, "area_height", o.area_height, w);
      o.battery_lo = get_number_or(g, "battery_lo", o.battery_lo, w);
      o.battery_hi = get_number_or(g, "battery_hi", o.battery_hi, w);
      cfg.scenario.generate = o;
    }
    if (sc.contains("file")) cfg.scenario.file = get_string(sc, "file", "scenario");
  }

  if (doc.contains("algorithm")) cfg.algorithm = parse_algorithm(get_string(doc, "algorithm", ""));

  if (doc.contains("radio")) {
    const json& r = doc.at("radio");
    const std::string w = "radio";
    require_keys(r,
                 {"ap_tx_power", "dev_tx_power", "noise", "bandwidth", "pathloss_exponent",
                  "ref_gain", "ref_distance", "snr_min_lr", "snr_min_sr", "beta"},
                 w);
    auto& p = cfg.radio;
    p.ap_tx_power = get_number_or(r, "ap_tx_power", p.ap_tx_power, w);
    p.dev_tx_power = get_number_or(r, "dev_tx_power", p.dev_tx_power, w);
    p.noise = get_number_or(r, "noise", p.noise, w);
    p.bandwidth = get_number_or(r, "bandwidth", p.bandwidth, w);
    p.pathloss_exponent = get_number_or(r, "pathloss_exponent", p.pathloss_exponent, w);
    p.ref_gain = get_number_or(r, "ref_gain", p.ref_gain, w);
    p.ref_distance = get_number_or(r, "ref_distance", p.ref_distance, w);
    p.snr_min_lr = get_number_or(r, "snr_min_lr", p.snr_min_lr, w);
    p.snr_min_sr = get_number_or(r, "snr_min_sr", p.snr_min_sr, w);
    p.beta = get_number_or(r, "beta", p.beta, w);
  }

  if (doc.contains("rforce")) {
    const json& r = doc.at("rforce");
    const std::string w = "rforce";
    require_keys(r,
                 {"k_centroids", "lambda", "eta", "kappa", "stability_eps", "stability_window",
                  "max_iters", "delta_sr", "delta_lr", "attraction", "parallel", "rescue"},
                 w);
    auto& p = cfg.rforce;
    p.k_centroids = get_count(r, "k_centroids", p.k_centroids, w);
    p.lambda = get_number_or(r, "lambda", p.lambda, w);
    p.eta = get_number_or(r, "eta", p.eta, w);
    p.kappa = get_number_or(r, "kappa", p.kappa, w);
    p.stability_eps = get_number_or(r, "stability_eps", p.stability_eps, w);
    p.stability_window = get_count(r, "stability_window", p.stability_window, w);
    p.max_iters = get_count(r, "max_iters", p.max_iters, w);
    p.delta_sr = static_cast<int>(get_integer_or(r, "delta_sr", p.delta_sr, w));
    p.delta_lr = static_cast<int>(get_integer_or(r, "delta_lr", p.delta_lr, w));
    if (r.contains("attraction")) p.scope = parse_scope(get_string(r, "attraction", w));
    p.execution = get_bool_or(r, "parallel", false, w) ? Execution::Parallel : Execution::Serial;
    p.rescue_outage = get_bool_or(r, "rescue", p.rescue_outage, w);
  }

  if (doc.contains("exact")) {
    const json& e = doc.at("exact");
    const std::string w = "exact";
    require_keys(e, {"delta_lr", "delta_sr", "node_limit", "time_limit"}, w);
    auto& p = cfg.exact;
    p.delta_lr = static_cast<int>(get_integer_or(e, "delta_lr", p.delta_lr, w));
    p.delta_sr = static_cast<int>(get_integer_or(e, "delta_sr", p.delta_sr, w));
    p.node_limit = get_count(e, "node_limit", p.node_limit, w);
    p.time_limit = get_number_or(e, "time_limit", p.time_limit, w);
  }

  if (doc.contains("lifetime")) {
    const json& l = doc.at("lifetime");
    require_keys(l, {"capacity_mah", "draw_current_a"}, "lifetime");
    cfg.lifetime.capacity_mah = get_number_or(l, "capacity_mah", cfg.lifetime.capacity_mah, "lifetime");
    cfg.lifetime.draw_current_a =
        get_number_or(l, "draw_current_a", cfg.lifetime.draw_current_a, "lifetime");
  }

  cfg.rho = get_number_or(doc, "rho", cfg.rho, "");
  cfg.theta = get_number_or(doc, "theta", cfg.theta, "");
  cfg.k_sweep = get_bool_or(doc, "k_sweep", cfg.k_sweep, "");

  if (doc.contains("seeds")) {
    const json& s = doc.at("seeds");
    if (s.is_array()) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].is_number_unsigned()) {
          throw ParseError("seeds[" + std::to_string(i) + "]: expected a non-negative integer");
        }
        cfg.seeds.push_back(s[i].get<std::uint64_t>());
      }
    } else {
      require_keys(s, {"base_seed", "n_trials"}, "seeds");
      cfg.base_seed = get_unsigned_or(s, "base_seed", cfg.base_seed, "seeds");
      cfg.n_trials = get_count(s, "n_trials", cfg.n_trials, "seeds");
    }
  }

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    require_keys(o, {"dir"}, "output");
    cfg.out_dir = get_string(o, "dir", "output");
  }

  cfg.validate();
  return cfg;
}

std::string run_config_to_json(const RunConfig& cfg) {
  json doc;
  if (cfg.scenario.generate) {
    const auto& g = *cfg.scenario.generate;
    doc["scenario"]["generate"] = {{"n_devices", g.n_devices},     {"n_aps", g.n_aps},
                                   {"area_width", g.area_width},   {"area_height", g.area_height},
                                   {"battery_lo", g.battery_lo},   {"battery_hi", g.battery_hi}};
  } else if (cfg.scenario.file) {
    doc["scenario"]["file"] = cfg.scenario.file->string();
  }
  doc["algorithm"] = to_string(cfg.algorithm);
  const auto& r = cfg.radio;
  doc["radio"] = {{"ap_tx_power", r.ap_tx_power},
                  {"dev_tx_power", r.dev_tx_power},
                  {"noise", r.noise},
                  {"bandwidth", r.bandwidth},
                  {"pathloss_exponent", r.pathloss_exponent},
                  {"ref_gain", r.ref_gain},
                  {"ref_distance", r.ref_distance},
                  {"snr_min_lr", r.snr_min_lr},
                  {"snr_min_sr", r.snr_min_sr},
                  {"beta", r.beta}};
  const auto& f = cfg.rforce;
  doc["rforce"] = {{"k_centroids", f.k_centroids},
                   {"lambda", f.lambda},
                   {"eta", f.eta},
                   {"kappa", f.kappa},
                   {"stability_eps", f.stability_eps},
                   {"stability_window", f.stability_window},
                   {"max_iters", f.max_iters},
                   {"delta_sr", f.delta_sr},
                   {"delta_lr", f.delta_lr},
                   {"attraction", scope_name(f.scope)},
                   {"parallel", f.execution == Execution::Parallel},
                   {"rescue", f.rescue_outage}};
  const auto& e = cfg.exact;
  doc["exact"] = {{"delta_lr", e.delta_lr},
                  {"delta_sr", e.delta_sr},
                  {"node_limit", e.node_limit},
                  {"time_limit", e.time_limit}};
  doc["lifetime"] = {{"capacity_mah", cfg.lifetime.capacity_mah},
                     {"draw_current_a", cfg.lifetime.draw_current_a}};
  doc["rho"] = cfg.rho;
  doc["theta"] = cfg.theta;
  doc["k_sweep"] = cfg.k_sweep;
  if (cfg.seeds.empty()) {
    doc["seeds"] = {{"base_seed", cfg.base_seed}, {"n_trials", cfg.n_trials}};
  } else {
    doc["seeds"] = cfg.seeds;
  }
  doc["output"] = {{"dir", cfg.out_dir.string()}};
  return doc.dump(2) + "\n";
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return run_config_from_json(json_util::read_file(path));
}

// ---------------------------------------------------------------------------
// Seeds

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ (v + 0x9E3779B97F4A7C15ULL)); }

constexpr std::uint64_t kScenarioTag = 0x7363656EULL;   // "scen"
constexpr std::uint64_t kAlgorithmTag = 0x616C676FULL;  // "algo"

}  // namespace

std::uint64_t derive_scenario_seed(std::uint64_t base, std::size_t n_devices, std::size_t n_aps,
                                   std::size_t trial) {
  return mix(mix(mix(mix(base, kScenarioTag), n_devices), n_aps), trial);
}

std::uint64_t derive_algorithm_seed(std::uint64_t base, std::size_t n_devices, std::size_t n_aps,
                                    Algorithm algorithm, std::size_t trial) {
  return mix(mix(mix(mix(mix(base, kAlgorithmTag), n_devices), n_aps),
                 static_cast<std::uint64_t>(algorithm)),
             trial);
}

// ---------------------------------------------------------------------------
// Runs

FeasibilityLimits feasibility_limits(const RunConfig& cfg, Algorithm a) {
  if (a == Algorithm::Exact) return {cfg.exact.delta_lr, cfg.exact.delta_sr, cfg.theta};
  return {cfg.rforce.delta_lr, cfg.rforce.delta_sr, cfg.theta};
}

EvaluationSettings evaluation_settings(const RunConfig& cfg, Algorithm a) {
  return {cfg.rho, feasibility_limits(cfg, a), cfg.lifetime};
}

AlgorithmOutcome run_algorithm(const Scenario& s, const RunConfig& cfg, Algorithm a,
                               std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  AlgorithmOutcome out;
  const auto start = clock::now();
  switch (a) {
    case Algorithm::RForce: {
      RForceRun run = cfg.k_sweep ? run_rforce_k_sweep(s, cfg.radio, cfg.rforce, cfg.rho, seed)
                                  : run_rforce_detailed(s, cfg.radio, cfg.rforce, seed);
      out.solution = std::move(run.solution);
      out.k = run.k;
      break;
    }
    case Algorithm::KMeans: {
      KMeansParams p;
      p.k = cfg.rforce.k_centroids > 0 ? cfg.rforce.k_centroids
                                       : default_centroid_count(s.n_devices(), cfg.rforce.delta_sr);
      p.delta_sr = cfg.rforce.delta_sr;
      p.delta_lr = cfg.rforce.delta_lr;
      p.execution = cfg.rforce.execution;
      out.solution = kmeans_detailed(s, cfg.radio, p, seed).solution;
      out.k = p.k;
      break;
    }
    case Algorithm::Exact: {
      ExactSolverConfig e = cfg.exact;
      e.rho = cfg.rho;
      e.theta = cfg.theta;
      ExactResult r = exact_solve(s, cfg.radio, e);
      out.solution = std::move(r.solution);
      out.exact_status = r.status;
      break;
    }
  }
  out.runtime_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
  out.metrics = evaluate(out.solution, s, cfg.radio, evaluation_settings(cfg, a));
  return out;
}

Scenario materialize_scenario(const RunConfig& cfg, std::uint64_t trial_base, std::size_t trial_index) {
  if (cfg.scenario.file) return load_scenario(*cfg.scenario.file);
  GenerateOptions g = *cfg.scenario.generate;
  g.ap_tx_power = cfg.radio.ap_tx_power;
  g.seed = derive_scenario_seed(trial_base, g.n_devices, g.n_aps, trial_index);
  return generate_scenario(g);
}

SingleRun run_single(const RunConfig& cfg, bool write_outputs) {
  cfg.validate();
  const std::uint64_t base = cfg.seeds.empty() ? cfg.base_seed : cfg.seeds.front();
  SingleRun run;
  run.scenario = materialize_scenario(cfg, base, 0);
  const std::uint64_t seed =
      derive_algorithm_seed(base, run.scenario.n_devices(), run.scenario.n_aps(), cfg.algorithm, 0);
  run.outcome = run_algorithm(run.scenario, cfg, cfg.algorithm, seed);
  if (write_outputs) {
    std::filesystem::create_directories(cfg.out_dir);
    save_scenario(run.scenario, cfg.out_dir / "scenario.json");
    save_solution(run.outcome.solution, cfg.out_dir / "solution.json");
    json_util::write_file(cfg.out_dir / "metrics.json", metrics_to_json(run.outcome.metrics));
  }
  return run;
}

// ---------------------------------------------------------------------------
// Sweeps

SweepResult run_sweep(const RunConfig& cfg, const SweepSpec& spec) {
  cfg.validate();
  if (cfg.scenario.file) throw ConfigError("sweep: scenarios must be generated, not loaded from file");
  for (auto n : spec.device_counts) {
    if (n < 1) throw ConfigError("sweep: device counts must be >= 1");
  }
  for (auto m : spec.ap_counts) {
    if (m < 1) throw ConfigError("sweep: AP counts must be >= 1");
  }

  const std::size_t trials = cfg.trial_count();
  const std::size_t n_alg = spec.algorithms.size();
  struct Task {
    std::size_t n, m, trial;
  };
  std::vector<Task> tasks;
  for (auto n : spec.device_counts) {
    for (auto m : spec.ap_counts) {
      for (std::size_t t = 0; t < trials; ++t) tasks.push_back({n, m, t});
    }
  }

  std::vector<TrialRecord> records(tasks.size() * n_alg);
  std::vector<std::string> errors(tasks.size());
  const auto n_tasks = static_cast<std::ptrdiff_t>(tasks.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t ti = 0; ti < n_tasks; ++ti) {
    const Task& task = tasks[static_cast<std::size_t>(ti)];
    try {
      const std::uint64_t base = cfg.seeds.empty() ? cfg.base_seed : cfg.seeds[task.trial];
      const std::size_t index = cfg.seeds.empty() ? task.trial : 0;
      RunConfig local = cfg;
      local.scenario.generate->n_devices = task.n;
      local.scenario.generate->n_aps = task.m;
      const Scenario s = materialize_scenario(local, base, index);
      for (std::size_t a = 0; a < n_alg; ++a) {
        TrialRecord& rec = records[static_cast<std::size_t>(ti) * n_alg + a];
        rec.n_devices = task.n;
        rec.n_aps = task.m;
        rec.algorithm = spec.algorithms[a];
        rec.trial = task.trial;
        if (rec.algorithm == Algorithm::Exact && task.n > cfg.exact.node_limit) {
          rec.skipped = true;
          continue;
        }
        const auto seed = derive_algorithm_seed(base, task.n, task.m, rec.algorithm, index);
        AlgorithmOutcome out = run_algorithm(s, cfg, rec.algorithm, seed);
        rec.metrics = out.metrics;
        rec.runtime_ms = out.runtime_ms;
      }
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(ti)] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw ConfigError("sweep: " + e);
  }

  SweepResult result;
  result.trials = std::move(records);
  result.rows = aggregate(result.trials, spec);
  return result;
}

std::vector<SweepRow> aggregate(const std::vector<TrialRecord>& trials, const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto n : spec.device_counts) {
    for (auto m : spec.ap_counts) {
      for (auto a : spec.algorithms) {
        SweepRow row;
        row.n_devices = n;
        row.n_aps = m;
        row.algorithm = a;
        std::vector<const TrialRecord*> cell;
        for (const auto& t : trials) {
          if (t.n_devices == n && t.n_aps == m && t.algorithm == a && !t.skipped) cell.push_back(&t);
        }
        row.trials = cell.size();
        if (cell.empty()) {
          row.mean_failure_cost = row.std_failure_cost = row.mean_sr_bitrate_bps = nan;
          row.mean_lr_bitrate_bps = row.mean_outage_frac = row.mean_head_lifetime_min = nan;
          row.mean_objective = row.mean_runtime_ms = nan;
          rows.push_back(row);
          continue;
        }
        const double cnt = static_cast<double>(cell.size());
        for (const auto* t : cell) {
          row.mean_failure_cost += t->metrics.total_failure_cost;
          row.mean_sr_bitrate_bps += t->metrics.avg_sr_bitrate;
          row.mean_lr_bitrate_bps += t->metrics.avg_lr_bitrate;
          row.mean_outage_frac += t->metrics.outage_fraction;
          row.mean_head_lifetime_min += t->metrics.avg_head_lifetime;
          row.mean_objective += t->metrics.objective;
          row.mean_runtime_ms += t->runtime_ms;
        }
        row.mean_failure_cost /= cnt;
        row.mean_sr_bitrate_bps /= cnt;
        row.mean_lr_bitrate_bps /= cnt;
        row.mean_outage_frac /= cnt;
        row.mean_head_lifetime_min /= cnt;
        row.mean_objective /= cnt;
        row.mean_runtime_ms /= cnt;
        if (cell.size() > 1) {
          double ss = 0.0;
          for (const auto* t : cell) {
            const double d = t->metrics.total_failure_cost - row.mean_failure_cost;
            ss += d * d;
          }
          row.std_failure_cost = std::sqrt(ss / (cnt - 1.0));
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view field, std::size_t line, const char* column) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError("sweep csv line " + std::to_string(line) + ": bad value for " + column);
  }
  return v;
}

std::size_t parse_size(std::string_view field, std::size_t line, const char* column) {
  std::size_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError("sweep csv line " + std::to_string(line) + ": bad value for " + column);
  }
  return v;
}

}  // namespace

std::string sweep_csv_header() {
  return "n_devices,n_aps,algorithm,trials,mean_failure_cost,std_failure_cost,mean_sr_bitrate_bps,"
         "mean_lr_bitrate_bps,mean_outage_frac,mean_head_lifetime_min,mean_objective,mean_runtime_ms";
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool include_timing) {
  std::ostringstream out;
  out << sweep_csv_header() << '\n';
  for (const auto& r : rows) {
    const double runtime = include_timing || r.trials == 0 ? r.mean_runtime_ms : 0.0;
    out << r.n_devices << ',' << r.n_aps << ',' << to_string(r.algorithm) << ',' << r.trials << ','
        << num(r.mean_failure_cost) << ',' << num(r.std_failure_cost) << ','
        << num(r.mean_sr_bitrate_bps) << ',' << num(r.mean_lr_bitrate_bps) << ','
        << num(r.mean_outage_frac) << ',' << num(r.mean_head_lifetime_min) << ','
        << num(r.mean_objective) << ',' << num(runtime) << '\n';
  }
  return out.str();
}

std::vector<SweepRow> sweep_from_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != sweep_csv_header()) throw ParseError("sweep csv: unexpected header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      f.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (f.size() != 12) {
      throw ParseError("sweep csv line " + std::to_string(line_no) + ": expected 12 columns");
    }
    SweepRow r;
    r.n_devices = parse_size(f[0], line_no, "n_devices");
    r.n_aps = parse_size(f[1], line_no, "n_aps");
    r.algorithm = parse_algorithm(f[2]);
    r.trials = parse_size(f[3], line_no, "trials");
    r.mean_failure_cost = parse_double(f[4], line_no, "mean_failure_cost");
    r.std_failure_cost = parse_double(f[5], line_no, "std_failure_cost");
    r.mean_sr_bitrate_bps = parse_double(f[6], line_no, "mean_sr_bitrate_bps");
    r.mean_lr_bitrate_bps = parse_double(f[7], line_no, "mean_lr_bitrate_bps");
    r.mean_outage_frac = parse_double(f[8], line_no, "mean_outage_frac");
    r.mean_head_lifetime_min = parse_double(f[9], line_no, "mean_head_lifetime_min");
    r.mean_objective = parse_double(f[10], line_no, "mean_objective");
    r.mean_runtime_ms = parse_double(f[11], line_no, "mean_runtime_ms");
    rows.push_back(r);
  }
  if (!header_seen) throw ParseError("sweep csv: missing header");
  return rows;
}

}  // namespace d2d

#include "d2d/metrics.hpp"

#include <algorithm>
#include <sstream>

#include "d2d/errors.hpp"
#include "d2d/json_util.hpp"
#include "d2d/objective.hpp"

namespace d2d {

using json_util::json;

double head_lifetime(double battery_frac, const LifetimeModel& model) {
  const double hours = battery_frac * (model.capacity_mah / 1000.0) / model.draw_current_a;
  return hours * 60.0;
}

FailureCost failure_cost(const ClusterSolution& sol, std::span<const double> reliabilities) {
  const auto counts = sol.member_counts();
  FailureCost fc;
  fc.per_head.reserve(sol.heads.size());
  for (int h : sol.heads) {
    const auto hi = static_cast<std::size_t>(h);
    const double c = (1.0 - reliabilities[hi]) * static_cast<double>(counts[hi]);
    fc.per_head.push_back(c);
    fc.total += c;
  }
  return fc;
}

namespace {

// Long-range links are read from `heads`/`ap_of_head`, short-range links from
// `head_of`, so a malformed solution shows up in the report instead of being
// silently normalised.
struct Links {
  std::vector<int> lr_count;  // per device
  std::vector<int> lr_ap;     // per device, last AP seen
  std::vector<int> sr_head;   // per device, kNone if none
};

Links collect_links(const ClusterSolution& sol, const Scenario& s) {
  if (sol.n_devices() != s.n_devices()) {
    throw ValidationError("solution covers " + std::to_string(sol.n_devices()) +
                          " devices but the scenario has " + std::to_string(s.n_devices()));
  }
  if (sol.ap_of_head.size() != sol.heads.size()) {
    throw ValidationError("ap_of_head must have one entry per head");
  }
  for (std::size_t k = 0; k < sol.heads.size(); ++k) {
    const int ap = sol.ap_of_head[k];
    if (ap != kNone && (ap < 0 || static_cast<std::size_t>(ap) >= s.n_aps())) {
      throw ValidationError("ap_of_head[" + std::to_string(k) + "]: AP index out of range");
    }
  }
  const std::size_t n = sol.n_devices();
  Links l{std::vector<int>(n, 0), std::vector<int>(n, kNone), std::vector<int>(n, kNone)};
  for (std::size_t k = 0; k < sol.heads.size(); ++k) {
    const int ap = sol.ap_of_head[k];
    if (ap == kNone) continue;
    const auto h = static_cast<std::size_t>(sol.heads[k]);
    ++l.lr_count[h];
    l.lr_ap[h] = ap;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int h = sol.head_of[i];
    if (h != kNone && h != static_cast<int>(i)) l.sr_head[i] = h;
  }
  return l;
}

}  // namespace

FeasibilityReport check_feasibility(const ClusterSolution& sol, const Scenario& s,
                                    const RadioParams& radio, const FeasibilityLimits& limits) {
  const std::size_t n = sol.n_devices();
  const Links links = collect_links(sol, s);
  FeasibilityReport r;

  std::vector<int> ap_load(s.n_aps(), 0);
  std::vector<int> head_load(n, 0);
  std::vector<bool> flagged_two_hop(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    const int sr = links.sr_head[i];
    const int receptions = links.lr_count[i] + (sr != kNone ? 1 : 0);
    if (receptions > 1) r.single_reception.fail(static_cast<int>(i));
    r.served += receptions;

    if (links.lr_count[i] > 0) {
      const int ap = links.lr_ap[i];
      ++ap_load[static_cast<std::size_t>(ap)];
      if (snr(lr_power(s, ap, static_cast<int>(i), radio), radio) < radio.snr_min_lr) {
        r.lr_snr.fail(static_cast<int>(i));
      }
    }
    if (sr != kNone) {
      const auto h = static_cast<std::size_t>(sr);
      ++head_load[h];
      if (links.lr_count[h] == 0 && !flagged_two_hop[h]) {
        flagged_two_hop[h] = true;
        r.two_hop.fail(sr);
      }
      if (snr(sr_power(s, sr, static_cast<int>(i), radio), radio) < radio.snr_min_sr) {
        r.sr_snr.fail(static_cast<int>(i));
      }
    }
  }
  std::sort(r.two_hop.violators.begin(), r.two_hop.violators.end());

  for (std::size_t m = 0; m < ap_load.size(); ++m) {
    if (ap_load[m] > limits.delta_lr) r.ap_capacity.fail(static_cast<int>(m));
  }
  for (std::size_t h = 0; h < n; ++h) {
    if (head_load[h] > limits.delta_sr) r.head_capacity.fail(static_cast<int>(h));
  }

  r.required_served = (1.0 - limits.theta) * static_cast<double>(n);
  if (static_cast<double>(r.served) < r.required_served - 1e-9) {
    r.coverage.passed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (links.lr_count[i] == 0 && links.sr_head[i] == kNone) {
        r.coverage.violators.push_back(static_cast<int>(i));
      }
    }
  }
  return r;
}

std::string feasibility_summary(const FeasibilityReport& r) {
  std::ostringstream out;
  auto line = [&](const char* name, const ConstraintCheck& c) {
    out << (c.passed ? "PASS " : "FAIL ") << name;
    if (!c.passed) {
      out << " violators:";
      for (int v : c.violators) out << ' ' << v;
    }
    out << '\n';
  };
  line("two_hop", r.two_hop);
  line("single_reception", r.single_reception);
  line("ap_capacity", r.ap_capacity);
  line("head_capacity", r.head_capacity);
  line("lr_snr", r.lr_snr);
  line("sr_snr", r.sr_snr);
  out << (r.coverage.passed ? "PASS " : "FAIL ") << "coverage served=" << r.served
      << " required=" << r.required_served << '\n';
  return out.str();
}

SolutionMetrics evaluate(const ClusterSolution& sol, const Scenario& s, const RadioParams& radio,
                         const EvaluationSettings& settings) {
  const std::size_t n = sol.n_devices();
  const auto rel = device_reliabilities(s, radio.beta);
  const Links links = collect_links(sol, s);
  SolutionMetrics m;

  m.total_failure_cost = failure_cost(sol, rel).total;

  double sr_sum = 0.0, lr_sum = 0.0;
  int sr_links = 0, lr_links = 0, unserved = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int dev = static_cast<int>(i);
    if (links.lr_count[i] > 0) {
      lr_sum += bitrate(snr(lr_power(s, links.lr_ap[i], dev, radio), radio), radio);
      ++lr_links;
    }
    if (links.sr_head[i] != kNone) {
      sr_sum += bitrate(snr(sr_power(s, links.sr_head[i], dev, radio), radio), radio);
      ++sr_links;
    }
    if (links.lr_count[i] == 0 && links.sr_head[i] == kNone) ++unserved;
  }
  m.avg_sr_bitrate = sr_links > 0 ? sr_sum / sr_links : 0.0;
  m.avg_lr_bitrate = lr_links > 0 ? lr_sum / lr_links : 0.0;
  m.outage_fraction = n > 0 ? static_cast<double>(unserved) / static_cast<double>(n) : 0.0;

  double life = 0.0;
  for (int h : sol.heads) {
    life += head_lifetime(s.devices[static_cast<std::size_t>(h)].battery_frac, settings.lifetime);
  }
  m.n_heads = static_cast<int>(sol.heads.size());
  m.avg_head_lifetime = sol.heads.empty() ? 0.0 : life / static_cast<double>(sol.heads.size());
  m.objective = objective_value(sol, s, radio, settings.rho);

  const FeasibilityReport rep = check_feasibility(sol, s, radio, settings.limits);
  m.feasibility = {rep.two_hop.passed,      rep.single_reception.passed, rep.ap_capacity.passed,
                   rep.head_capacity.passed, rep.coverage.passed,       rep.lr_snr.passed,
                   rep.sr_snr.passed};
  return m;
}

std::string metrics_to_json(const SolutionMetrics& m) {
  json doc;
  doc["total_failure_cost"] = m.total_failure_cost;
  doc["avg_sr_bitrate"] = m.avg_sr_bitrate;
  doc["avg_lr_bitrate"] = m.avg_lr_bitrate;
  doc["outage_fraction"] = m.outage_fraction;
  doc["avg_head_lifetime"] = m.avg_head_lifetime;
  doc["objective"] = m.objective;
  doc["n_heads"] = m.n_heads;
  doc["feasibility"] = {{"two_hop", m.feasibility.two_hop},
                        {"single_reception", m.feasibility.single_reception},
                        {"ap_capacity", m.feasibility.ap_capacity},
                        {"head_capacity", m.feasibility.head_capacity},
                        {"coverage", m.feasibility.coverage},
                        {"lr_snr", m.feasibility.lr_snr},
                        {"sr_snr", m.feasibility.sr_snr}};
  return doc.dump(2) + "\n";
}

SolutionMetrics metrics_from_json(std::string_view text) {
  using namespace json_util;
  const json doc = parse_document(text, "metrics");
  require_keys(doc,
               {"total_failure_cost", "avg_sr_bitrate", "avg_lr_bitrate", "outage_fraction",
                "avg_head_lifetime", "objective", "n_heads", "feasibility"},
               "");
  SolutionMetrics m;
  m.total_failure_cost = get_number(doc, "total_failure_cost", "");
  m.avg_sr_bitrate = get_number(doc, "avg_sr_bitrate", "");
  m.avg_lr_bitrate = get_number(doc, "avg_lr_bitrate", "");
  m.outage_fraction = get_number(doc, "outage_fraction", "");
  m.avg_head_lifetime = get_number(doc, "avg_head_lifetime", "");
  m.objective = get_number(doc, "objective", "");
  m.n_heads = static_cast<int>(get_integer(doc, "n_heads", ""));

  const json& f = require(doc, "feasibility", "");
  require_keys(f,
               {"two_hop", "single_reception", "ap_capacity", "head_capacity", "coverage",
                "lr_snr", "sr_snr"},
               "feasibility");
  m.feasibility.two_hop = get_bool_or(f, "two_hop", true, "feasibility");
  m.feasibility.single_reception = get_bool_or(f, "single_reception", true, "feasibility");
  m.feasibility.ap_capacity = get_bool_or(f, "ap_capacity", true, "feasibility");
  m.feasibility.head_capacity = get_bool_or(f, "head_capacity", true, "feasibility");
  m.feasibility.coverage = get_bool_or(f, "coverage", true, "feasibility");
  m.feasibility.lr_snr = get_bool_or(f, "lr_snr", true, "feasibility");
  m.feasibility.sr_snr = get_bool_or(f, "sr_snr", true, "feasibility");
  return m;
}

}  // namespace d2d

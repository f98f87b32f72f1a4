#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/radio.hpp"
#include "d2d/scenario.hpp"
#include "d2d/solution.hpp"

namespace d2d {

/// Battery model for a head that downloads continuously. The default draw
/// is 1.27 W at 3.7 V, rounded to 0.34 A.
struct LifetimeModel {
  double capacity_mah = 2000.0;
  double draw_current_a = 0.34;

  static LifetimeModel from_power(double capacity_mah, double power_w, double voltage_v) {
    return {capacity_mah, power_w / voltage_v};
  }
};

/// Minutes until a head with the given charge fraction runs flat.
double head_lifetime(double battery_frac, const LifetimeModel& model = {});

struct FailureCost {
  std::vector<double> per_head;  // aligned with ClusterSolution::heads
  double total = 0.0;
};

/// (1 - reliability) times member count, per head.
FailureCost failure_cost(const ClusterSolution& sol, std::span<const double> reliabilities);

struct ConstraintCheck {
  bool passed = true;
  std::vector<int> violators;  // device indices (AP indices for ap_capacity)

  void fail(int who) {
    passed = false;
    violators.push_back(who);
  }
};

struct FeasibilityLimits {
  int delta_lr = 30;
  int delta_sr = 10;
  double theta = 0.05;
};

/// One entry per constraint of the integer program.
struct FeasibilityReport {
  ConstraintCheck two_hop;           // every head with members has an AP link
  ConstraintCheck single_reception;  // at most one reception link per device
  ConstraintCheck ap_capacity;       // heads per AP <= delta_lr
  ConstraintCheck head_capacity;     // members per head <= delta_sr
  ConstraintCheck coverage;          // served >= (1 - theta) N
  ConstraintCheck lr_snr;            // long-range links above threshold
  ConstraintCheck sr_snr;            // short-range links above threshold

  int served = 0;
  double required_served = 0.0;

  /// Everything except the outage bound, which heuristics may miss.
  bool structural_ok() const {
    return two_hop.passed && single_reception.passed && ap_capacity.passed &&
           head_capacity.passed && lr_snr.passed && sr_snr.passed;
  }
  bool all_passed() const { return structural_ok() && coverage.passed; }
};

FeasibilityReport check_feasibility(const ClusterSolution& sol, const Scenario& s,
                                    const RadioParams& radio, const FeasibilityLimits& limits);

std::string feasibility_summary(const FeasibilityReport& report);

struct FeasibilityFlags {
  bool two_hop = true;
  bool single_reception = true;
  bool ap_capacity = true;
  bool head_capacity = true;
  bool coverage = true;
  bool lr_snr = true;
  bool sr_snr = true;

  friend bool operator==(const FeasibilityFlags&, const FeasibilityFlags&) = default;
};

struct SolutionMetrics {
  double total_failure_cost = 0.0;
  double avg_sr_bitrate = 0.0;  // bps, over active short-range links
  double avg_lr_bitrate = 0.0;  // bps, over active long-range links
  double outage_fraction = 0.0;
  double avg_head_lifetime = 0.0;  // minutes, over heads
  double objective = 0.0;
  int n_heads = 0;
  FeasibilityFlags feasibility;

  friend bool operator==(const SolutionMetrics&, const SolutionMetrics&) = default;
};

struct EvaluationSettings {
  double rho = 20.0;
  FeasibilityLimits limits;
  LifetimeModel lifetime;
};

/// Averages over empty link sets are 0.
SolutionMetrics evaluate(const ClusterSolution& sol, const Scenario& s, const RadioParams& radio,
                         const EvaluationSettings& settings = {});

std::string metrics_to_json(const SolutionMetrics& m);
SolutionMetrics metrics_from_json(std::string_view text);

}  // namespace d2d

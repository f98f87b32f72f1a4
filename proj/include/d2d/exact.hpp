#pragma once

#include <cstddef>
#include <cstdint>

#include "d2d/radio.hpp"
#include "d2d/scenario.hpp"
#include "d2d/solution.hpp"

namespace d2d {

struct ExactSolverConfig {
  double rho = 20.0;
  double theta = 0.05;
  int delta_lr = 30;
  int delta_sr = 10;
  std::size_t node_limit = 10;  // largest device count accepted
  double time_limit = 30.0;     // seconds

  void validate() const;
};

enum class ExactStatus { Optimal, Infeasible, TimeLimit };

const char* to_string(ExactStatus status);

struct ExactResult {
  ExactStatus status = ExactStatus::Infeasible;
  ClusterSolution solution;  // best found; all-outage when infeasible
  double objective = 0.0;    // objective_value of `solution`
  std::uint64_t nodes = 0;
};

/// Depth-first branch and bound over every device's reception option
/// (outage, a long-range link to some AP, or a short-range link to another
/// device that then must hold a long-range link). All integer-program
/// constraints are enforced, including the outage bound. A branch is cut
/// when its partial objective plus the best case of every undecided device
/// cannot beat the incumbent. Options are explored cheapest first with a
/// fixed tie order, and only strict improvements replace the incumbent, so
/// the result is deterministic.
///
/// Throws SizeLimitError when the scenario has more than node_limit devices.
ExactResult exact_solve(const Scenario& s, const RadioParams& radio, const ExactSolverConfig& cfg);

}  // namespace d2d

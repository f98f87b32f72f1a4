#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "d2d/radio.hpp"
#include "d2d/scenario.hpp"
#include "d2d/solution.hpp"

namespace testing {

// Hand-built scenario on a 100x100 area; batteries default to 1.
d2d::Scenario make_scenario(const std::vector<d2d::Point>& devices,
                            const std::vector<d2d::Point>& aps,
                            const std::vector<double>& batteries = {});

// Small random scenario: n in [n_lo, n_hi], m APs on the grid layout.
d2d::Scenario random_scenario(std::mt19937_64& rng, std::size_t n_lo, std::size_t n_hi,
                              std::size_t m = 1);

double uniform(std::mt19937_64& rng, double lo, double hi);
std::size_t uniform_count(std::mt19937_64& rng, std::size_t lo, std::size_t hi);

// Minimum of the objective over every assignment that satisfies all
// integer-program constraints, by plain enumeration. kInfeasible when none.
struct OracleResult {
  bool feasible = false;
  double objective = 0.0;
  std::uint64_t assignments = 0;
};

OracleResult brute_force_optimum(const d2d::Scenario& s, const d2d::RadioParams& radio, double rho,
                                 double theta, int delta_lr, int delta_sr);

}  // namespace testing

#pragma once

#include "d2d/radio.hpp"
#include "d2d/scenario.hpp"
#include "d2d/solution.hpp"

namespace d2d {

/// rho * sum of head failure costs, minus the received power of every
/// long-range (AP to head) and short-range (head to member) link present in
/// the solution. Lower is better; an all-outage solution scores 0.
///
/// Terms are accumulated device by device in index order, so two callers
/// holding the same solution get bitwise-equal values.
double objective_value(const ClusterSolution& sol, const Scenario& s, const RadioParams& radio,
                       double rho);

}  // namespace d2d

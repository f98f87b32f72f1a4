#include "d2d/objective.hpp"

namespace d2d {

double objective_value(const ClusterSolution& sol, const Scenario& s, const RadioParams& radio,
                       double rho) {
  const auto rel = device_reliabilities(s, radio.beta);
  std::vector<int> ap(sol.n_devices(), kNone);
  for (std::size_t k = 0; k < sol.heads.size(); ++k) {
    ap[static_cast<std::size_t>(sol.heads[k])] = sol.ap_of_head[k];
  }

  double total = 0.0;
  for (std::size_t i = 0; i < sol.n_devices(); ++i) {
    const int h = sol.head_of[i];
    if (h == kNone) continue;
    if (h == static_cast<int>(i)) {
      if (ap[i] != kNone) total -= lr_power(s, ap[i], h, radio);
    } else {
      total += rho * (1.0 - rel[static_cast<std::size_t>(h)]);
      total -= sr_power(s, h, static_cast<int>(i), radio);
    }
  }
  return total;
}

}  // namespace d2d

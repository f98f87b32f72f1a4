#include "support.hpp"

#include <cmath>
#include <limits>

namespace testing {

d2d::Scenario make_scenario(const std::vector<d2d::Point>& devices,
                            const std::vector<d2d::Point>& aps,
                            const std::vector<double>& batteries) {
  d2d::Scenario s;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const double b = batteries.empty() ? 1.0 : batteries[i];
    s.devices.push_back({static_cast<int>(i), devices[i].x, devices[i].y, b, 1.0});
  }
  for (std::size_t m = 0; m < aps.size(); ++m) {
    s.aps.push_back({static_cast<int>(m), aps[m].x, aps[m].y, 10.0});
  }
  return s;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_count(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

d2d::Scenario random_scenario(std::mt19937_64& rng, std::size_t n_lo, std::size_t n_hi,
                              std::size_t m) {
  d2d::GenerateOptions g;
  g.n_devices = uniform_count(rng, n_lo, n_hi);
  g.n_aps = m;
  g.seed = rng();
  return d2d::generate_scenario(g);
}

namespace {

// Written from the constraint list directly; shares nothing with the solver
// beyond the link-budget helpers.
struct Enumerator {
  const d2d::Scenario& s;
  const d2d::RadioParams& radio;
  double rho, theta;
  int delta_lr, delta_sr;
  std::size_t n, m;
  std::vector<int> choice;  // 0 outage, 1..m LR to AP c-1, m+1.. SR from device
  OracleResult best;

  double power_lr(std::size_t ap, std::size_t i) const {
    return d2d::received_power(s.aps[ap].tx_power,
                               d2d::distance(s.aps[ap].position(), s.devices[i].position()), radio);
  }
  double power_sr(std::size_t from, std::size_t to) const {
    return d2d::received_power(radio.dev_tx_power,
                               d2d::distance(s.devices[from].position(), s.devices[to].position()),
                               radio);
  }

  void evaluate() {
    ++best.assignments;
    std::vector<int> members(n, 0), ap_load(m, 0);
    std::size_t served = 0;
    double lr_sum = 0.0, sr_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int c = choice[i];
      if (c == 0) continue;
      ++served;
      if (c <= static_cast<int>(m)) {
        const auto ap = static_cast<std::size_t>(c - 1);
        const double p = power_lr(ap, i);
        if (p / radio.noise < radio.snr_min_lr) return;
        ++ap_load[ap];
        lr_sum += p;
      } else {
        const auto j = static_cast<std::size_t>(c - static_cast<int>(m) - 1);
        // relay must itself be fed by an AP
        if (choice[j] == 0 || choice[j] > static_cast<int>(m)) return;
        const double p = power_sr(j, i);
        if (p / radio.noise < radio.snr_min_sr) return;
        ++members[j];
        sr_sum += p;
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      if (ap_load[a] > delta_lr) return;
    }
    double cost = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (members[j] > delta_sr) return;
      const auto& d = s.devices[j];
      double headroom = (d.battery_frac - radio.beta) / (1.0 - radio.beta);
      headroom = std::min(1.0, std::max(0.0, headroom));
      cost += (1.0 - d.rating * headroom) * members[j];
    }
    if (static_cast<double>(served) < (1.0 - theta) * static_cast<double>(n) - 1e-9) return;
    const double obj = rho * cost - lr_sum - sr_sum;
    if (!best.feasible || obj < best.objective) {
      best.feasible = true;
      best.objective = obj;
    }
  }

  void recurse(std::size_t i) {
    if (i == n) {
      evaluate();
      return;
    }
    for (int c = 0; c <= static_cast<int>(m + n); ++c) {
      if (c == static_cast<int>(m + 1 + i)) continue;  // no self link
      choice[i] = c;
      recurse(i + 1);
    }
  }
};

}  // namespace

OracleResult brute_force_optimum(const d2d::Scenario& s, const d2d::RadioParams& radio, double rho,
                                 double theta, int delta_lr, int delta_sr) {
  Enumerator e{s, radio, rho, theta, delta_lr, delta_sr, s.n_devices(), s.n_aps(), {}, {}};
  e.choice.assign(e.n, 0);
  e.recurse(0);
  return e.best;
}

}  // namespace testing

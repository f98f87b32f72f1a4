#include "d2d/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <tuple>
#include <vector>

#include "d2d/errors.hpp"
#include "d2d/objective.hpp"

namespace d2d {

void ExactSolverConfig::validate() const {
  if (!(rho >= 0.0)) throw ConfigError("exact: rho must be >= 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("exact: theta must lie in [0,1]");
  if (delta_lr < 0 || delta_sr < 0) throw ConfigError("exact: degree bounds must be >= 0");
  if (!(time_limit > 0.0)) throw ConfigError("exact: time_limit must be positive");
}

const char* to_string(ExactStatus status) {
  switch (status) {
    case ExactStatus::Optimal: return "optimal";
    case ExactStatus::Infeasible: return "infeasible";
    case ExactStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

namespace {

enum class Kind { Outage, LongRange, ShortRange };

struct Option {
  Kind kind;
  int target;  // AP for LongRange, head device for ShortRange
  double cost;
};

class BranchAndBound {
 public:
  BranchAndBound(const Scenario& s, const RadioParams& radio, const ExactSolverConfig& cfg)
      : n_(s.n_devices()), m_(s.n_aps()), cfg_(cfg),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(cfg.time_limit))) {
    const auto rel = device_reliabilities(s, radio.beta);
    options_.resize(n_);
    std::vector<double> best(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const int dev = static_cast<int>(i);
      options_[i].push_back({Kind::Outage, kNone, 0.0});
      for (std::size_t m = 0; m < m_; ++m) {
        const double p = lr_power(s, static_cast<int>(m), dev, radio);
        if (snr(p, radio) >= radio.snr_min_lr) {
          options_[i].push_back({Kind::LongRange, static_cast<int>(m), -p});
        }
      }
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == i) continue;
        const double p = sr_power(s, static_cast<int>(j), dev, radio);
        if (snr(p, radio) >= radio.snr_min_sr) {
          options_[i].push_back({Kind::ShortRange, static_cast<int>(j), cfg.rho * (1.0 - rel[j]) - p});
        }
      }
      std::stable_sort(options_[i].begin(), options_[i].end(), [](const Option& a, const Option& b) {
        return std::tie(a.cost, a.kind, a.target) < std::tie(b.cost, b.kind, b.target);
      });
      for (const auto& o : options_[i]) best[i] = std::min(best[i], o.cost);
    }
    suffix_best_.assign(n_ + 1, 0.0);
    for (std::size_t i = n_; i-- > 0;) suffix_best_[i] = suffix_best_[i + 1] + best[i];

    required_ = (1.0 - cfg.theta) * static_cast<double>(n_) - 1e-9;
    choice_.assign(n_, {Kind::Outage, kNone, 0.0});
    ap_load_.assign(m_, 0);
    head_load_.assign(n_, 0);
    pending_.assign(n_, 0);
  }

  ExactStatus run() {
    search(0, 0.0, 0);
    if (timed_out_) return ExactStatus::TimeLimit;
    return found_ ? ExactStatus::Optimal : ExactStatus::Infeasible;
  }

  bool found() const { return found_; }
  std::uint64_t nodes() const { return nodes_; }

  ClusterSolution incumbent() const {
    ClusterSolution sol;
    sol.head_of.assign(n_, kNone);
    for (std::size_t i = 0; i < n_; ++i) {
      const Option& o = best_choice_[i];
      if (o.kind == Kind::LongRange) {
        sol.head_of[i] = static_cast<int>(i);
        sol.heads.push_back(static_cast<int>(i));
        sol.ap_of_head.push_back(o.target);
      } else if (o.kind == Kind::ShortRange) {
        sol.head_of[i] = o.target;
      }
    }
    return sol;
  }

 private:
  void search(std::size_t i, double partial, int served) {
    if (timed_out_) return;
    if ((++nodes_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    if (found_ && partial + suffix_best_[i] >= best_cost_) return;
    if (static_cast<double>(served) + static_cast<double>(n_ - i) < required_) return;

    if (i == n_) {
      found_ = true;
      best_cost_ = partial;
      best_choice_ = choice_;
      return;
    }

    const bool must_relay = pending_[i] > 0;
    for (const Option& o : options_[i]) {
      switch (o.kind) {
        case Kind::Outage:
          if (must_relay) break;
          choice_[i] = o;
          search(i + 1, partial, served);
          break;
        case Kind::LongRange: {
          auto& load = ap_load_[static_cast<std::size_t>(o.target)];
          if (load >= cfg_.delta_lr) break;
          ++load;
          choice_[i] = o;
          search(i + 1, partial + o.cost, served + 1);
          --load;
          break;
        }
        case Kind::ShortRange: {
          if (must_relay) break;
          const auto j = static_cast<std::size_t>(o.target);
          if (head_load_[j] >= cfg_.delta_sr) break;
          if (j < i && choice_[j].kind != Kind::LongRange) break;
          ++head_load_[j];
          if (j > i) ++pending_[j];
          choice_[i] = o;
          search(i + 1, partial + o.cost, served + 1);
          if (j > i) --pending_[j];
          --head_load_[j];
          break;
        }
      }
      if (timed_out_) return;
    }
  }

  std::size_t n_;
  std::size_t m_;
  ExactSolverConfig cfg_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<std::vector<Option>> options_;
  std::vector<double> suffix_best_;
  double required_ = 0.0;

  std::vector<Option> choice_;
  std::vector<int> ap_load_;
  std::vector<int> head_load_;
  std::vector<int> pending_;  // members waiting on a later device to relay

  bool found_ = false;
  bool timed_out_ = false;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::vector<Option> best_choice_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExactResult exact_solve(const Scenario& s, const RadioParams& radio, const ExactSolverConfig& cfg) {
  cfg.validate();
  if (s.n_devices() > cfg.node_limit) {
    throw SizeLimitError("exact solver accepts at most " + std::to_string(cfg.node_limit) +
                         " devices; scenario has " + std::to_string(s.n_devices()));
  }

  BranchAndBound bb(s, radio, cfg);
  ExactResult result;
  result.status = bb.run();
  result.nodes = bb.nodes();
  if (bb.found()) {
    result.solution = bb.incumbent();
  } else {
    result.solution.head_of.assign(s.n_devices(), kNone);
  }
  result.objective = objective_value(result.solution, s, radio, cfg.rho);
  return result;
}

}  // namespace d2d

#include "d2d/rforce.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <tuple>

#include "d2d/errors.hpp"
#include "d2d/objective.hpp"

namespace d2d {

void RForceParams::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("rforce: lambda must lie in (0,1]");
  if (!(eta > 0.0)) throw ConfigError("rforce: eta must be positive");
  if (!(stability_eps >= 0.0)) throw ConfigError("rforce: stability_eps must be >= 0");
  if (stability_window < 1) throw ConfigError("rforce: stability_window must be >= 1");
  if (max_iters < 1) throw ConfigError("rforce: max_iters must be >= 1");
  if (delta_sr < 1 || delta_lr < 1) throw ConfigError("rforce: degree bounds must be >= 1");
}

std::size_t default_centroid_count(std::size_t n_devices, int delta_sr) {
  const auto cap = static_cast<std::size_t>(std::max(delta_sr, 1));
  return std::max<std::size_t>(1, (n_devices + cap - 1) / cap);
}

Association associate_centroids(std::span<Centroid> centroids, std::span<const Point> devices,
                                int delta_sr, Execution ex) {
  Association a;
  a.members.assign(centroids.size(), {});
  a.centroid_of.assign(devices.size(), kNone);
  for (auto& c : centroids) c.degree = 0;
  if (centroids.empty()) return a;

  std::vector<Point> where(centroids.size());
  for (std::size_t k = 0; k < centroids.size(); ++k) where[k] = centroids[k].position();

  // The unconstrained nearest centroid is the answer whenever it still has
  // room; only devices that hit a full centroid need the capacity-aware scan.
  std::vector<int> nearest(devices.size());
  kernels::nearest_centroid(ex, devices, where, nearest);

  for (std::size_t i = 0; i < devices.size(); ++i) {
    int best = nearest[i];
    if (centroids[static_cast<std::size_t>(best)].degree >= delta_sr) {
      best = kNone;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < centroids.size(); ++k) {
        const double d = distance(devices[i], where[k]);
        if (centroids[k].degree < delta_sr && d < best_d) {
          best_d = d;
          best = static_cast<int>(k);
        }
      }
    }
    if (best == kNone) continue;
    ++centroids[static_cast<std::size_t>(best)].degree;
    a.members[static_cast<std::size_t>(best)].push_back(static_cast<int>(i));
    a.centroid_of[i] = best;
  }
  return a;
}

void move_centroid(Centroid& c, const ForceVector& f, double eta) {
  c.prev_x = c.x;
  c.prev_y = c.y;
  const double norm = f.norm();
  if (norm > 0.0) {
    c.x += eta * f.fx / norm;
    c.y += eta * f.fy / norm;
  }
}

std::vector<Centroid> scatter_centroids(std::size_t k, double width, double height,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, width);
  std::uniform_real_distribution<double> uy(0.0, height);
  std::vector<Centroid> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    out.push_back(Centroid::at({x, y}));
  }
  return out;
}

namespace {

// Fixed-step dynamics orbit a resting point instead of stopping, so the
// test compares window-averaged positions of consecutive windows.
class StabilityMonitor {
 public:
  StabilityMonitor(std::size_t window, double eps) : window_(window), eps_(eps) {}

  bool push(std::span<const Centroid> cs) {
    std::vector<Point> snap(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) snap[k] = cs[k].position();
    history_.push_back(std::move(snap));
    if (history_.size() > 2 * window_) history_.pop_front();
    if (history_.size() < 2 * window_) return false;

    double worst = 0.0;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      Point older{}, recent{};
      for (std::size_t t = 0; t < window_; ++t) {
        older.x += history_[t][k].x;
        older.y += history_[t][k].y;
        recent.x += history_[window_ + t][k].x;
        recent.y += history_[window_ + t][k].y;
      }
      const double w = static_cast<double>(window_);
      worst = std::max(worst, distance({older.x / w, older.y / w}, {recent.x / w, recent.y / w}));
    }
    return worst <= eps_;
  }

 private:
  std::size_t window_;
  double eps_;
  std::deque<std::vector<Point>> history_;
};

}  // namespace

Phase1Result phase1(std::span<const Point> devices, std::span<const double> reliabilities,
                    std::vector<Centroid> centroids, const RForceParams& params,
                    const Phase1Observer& observer) {
  params.validate();
  std::vector<PointCharge> device_charges(devices.size());
  for (std::size_t i = 0; i < devices.size(); ++i) {
    device_charges[i] = {devices[i], device_charge(reliabilities[i])};
  }

  std::vector<PointCharge> centroid_charges(centroids.size());
  std::vector<ForceVector> forces(centroids.size());
  StabilityMonitor monitor(params.stability_window, params.stability_eps);

  Phase1Result result;
  for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
    const Association assoc =
        associate_centroids(centroids, devices, params.delta_sr, params.execution);
    for (std::size_t k = 0; k < centroids.size(); ++k) {
      centroid_charges[k] = {centroids[k].position(),
                             centroid_charge(centroids[k].degree, params.lambda)};
    }
    kernels::ForceInputs in{centroid_charges, device_charges, &assoc.members,
                            params.scope == AttractionScope::AllDevices, params.kappa};
    kernels::centroid_forces(params.execution, in, forces);
    for (std::size_t k = 0; k < centroids.size(); ++k) move_centroid(centroids[k], forces[k], params.eta);

    result.iterations = iter + 1;
    if (observer) observer(Phase1Step{iter, centroids, assoc, forces});
    if (monitor.push(centroids)) {
      result.converged = true;
      break;
    }
  }

  result.association = associate_centroids(centroids, devices, params.delta_sr, params.execution);
  result.centroids = std::move(centroids);
  return result;
}

Phase1Result phase1(const Scenario& s, const RadioParams& radio, const RForceParams& params,
                    std::uint64_t seed, const Phase1Observer& observer) {
  const std::size_t k = params.k_centroids > 0 ? params.k_centroids
                                               : default_centroid_count(s.n_devices(), params.delta_sr);
  const auto positions = s.device_positions();
  const auto rel = device_reliabilities(s, radio.beta);
  return phase1(positions, rel, scatter_centroids(k, s.area_width, s.area_height, seed), params,
                observer);
}

HeadMapping phase2_map_centroids(std::span<const Centroid> centroids,
                                 std::span<const Point> devices, const Association& assoc) {
  HeadMapping m;
  m.head_of.assign(devices.size(), kNone);
  for (std::size_t k = 0; k < centroids.size(); ++k) {
    int best = kNone;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < devices.size(); ++i) {
      const double d = distance(centroids[k].position(), devices[i]);
      if (m.head_of[i] == kNone && d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    if (best == kNone) {
      ++m.skipped_centroids;
      continue;
    }
    m.head_of[static_cast<std::size_t>(best)] = best;
    m.heads.push_back(best);
    for (int i : assoc.members[k]) {
      // A member already claimed as another centroid's head keeps that role.
      if (m.head_of[static_cast<std::size_t>(i)] == i) continue;
      m.head_of[static_cast<std::size_t>(i)] = best;
    }
  }
  return m;
}

std::vector<int> phase3_associate_aps(const Scenario& s, std::span<const int> heads, int delta_lr) {
  struct Edge {
    double dist;
    int ap;
    int head;  // device id
    std::size_t slot;
  };
  std::vector<Edge> edges;
  edges.reserve(s.n_aps() * heads.size());
  for (const auto& ap : s.aps) {
    for (std::size_t h = 0; h < heads.size(); ++h) {
      const auto& d = s.devices[static_cast<std::size_t>(heads[h])];
      edges.push_back({distance(ap.position(), d.position()), ap.id, heads[h], h});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.dist, a.ap, a.head) < std::tie(b.dist, b.ap, b.head);
  });

  std::vector<int> ap_of_head(heads.size(), kNone);
  std::vector<int> degree(s.n_aps(), 0);
  for (const auto& e : edges) {
    if (ap_of_head[e.slot] != kNone) continue;
    if (degree[static_cast<std::size_t>(e.ap)] >= delta_lr) continue;
    ap_of_head[e.slot] = e.ap;
    ++degree[static_cast<std::size_t>(e.ap)];
  }
  return ap_of_head;
}

std::size_t rescue_outage_devices(const Scenario& s, const RadioParams& radio,
                                  ClusterSolution& sol, int delta_lr) {
  std::vector<int> degree(s.n_aps(), 0);
  for (int ap : sol.ap_of_head) {
    if (ap != kNone) ++degree[static_cast<std::size_t>(ap)];
  }
  struct Edge {
    double dist;
    int ap;
    int dev;
  };
  std::vector<Edge> edges;
  for (int i : sol.outage()) {
    for (const auto& ap : s.aps) {
      if (degree[static_cast<std::size_t>(ap.id)] >= delta_lr) continue;
      if (snr(lr_power(s, ap.id, i, radio), radio) < radio.snr_min_lr) continue;
      edges.push_back({distance(ap.position(), s.devices[static_cast<std::size_t>(i)].position()),
                       ap.id, i});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.dist, a.ap, a.dev) < std::tie(b.dist, b.ap, b.dev);
  });
  std::size_t rescued = 0;
  for (const auto& e : edges) {
    auto& slot = sol.head_of[static_cast<std::size_t>(e.dev)];
    if (slot != kNone || degree[static_cast<std::size_t>(e.ap)] >= delta_lr) continue;
    slot = e.dev;
    sol.heads.push_back(e.dev);
    sol.ap_of_head.push_back(e.ap);
    ++degree[static_cast<std::size_t>(e.ap)];
    ++rescued;
  }
  return rescued;
}

RForceRun run_rforce_detailed(const Scenario& s, const RadioParams& radio,
                              const RForceParams& params, std::uint64_t seed) {
  RForceRun run;
  run.k = params.k_centroids > 0 ? params.k_centroids
                                 : default_centroid_count(s.n_devices(), params.delta_sr);
  RForceParams p = params;
  p.k_centroids = run.k;

  const auto positions = s.device_positions();
  Phase1Result p1 = phase1(s, radio, p, seed);
  HeadMapping mapping = phase2_map_centroids(p1.centroids, positions, p1.association);
  const auto ap_of_head = phase3_associate_aps(s, mapping.heads, p.delta_lr);

  run.solution = prune_to_link_budget(s, radio, std::move(mapping.head_of), mapping.heads, ap_of_head);
  if (p.rescue_outage) run.rescued = rescue_outage_devices(s, radio, run.solution, p.delta_lr);
  run.iterations = p1.iterations;
  run.converged = p1.converged;
  run.skipped_centroids = mapping.skipped_centroids;
  return run;
}

ClusterSolution run_rforce(const Scenario& s, const RadioParams& radio, const RForceParams& params,
                           std::uint64_t seed) {
  return run_rforce_detailed(s, radio, params, seed).solution;
}

RForceRun run_rforce_k_sweep(const Scenario& s, const RadioParams& radio,
                             const RForceParams& params, double rho, std::uint64_t seed) {
  const std::size_t n = s.n_devices();
  const std::size_t k0 =
      params.k_centroids > 0 ? params.k_centroids : default_centroid_count(n, params.delta_sr);
  const std::size_t lo = k0 > 3 ? k0 - 2 : 1;
  const std::size_t hi = std::min(k0 + 2, n);

  RForceRun best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (std::size_t k = lo; k <= std::max(lo, hi); ++k) {
    RForceParams p = params;
    p.k_centroids = k;
    RForceRun run = run_rforce_detailed(s, radio, p, seed);
    const double obj = objective_value(run.solution, s, radio, rho);
    if (obj < best_obj) {
      best_obj = obj;
      best = std::move(run);
    }
  }
  return best;
}

}  // namespace d2d

#pragma once

// Reliability-aware clustering driven by electrostatic forces.
//
// Phase 1 scatters K virtual centroids (positive charges) over the area and
// lets them settle: devices pull on the centroid they are associated with in
// proportion to their reliability, centroids push each other apart, and each
// centroid steps a fixed distance along its net force. Phase 2 pins every
// settled centroid to the nearest unclaimed device, which becomes a cluster
// head. Phase 3 attaches heads to access points greedily by distance under
// the per-AP degree bound.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "d2d/force.hpp"
#include "d2d/kernels.hpp"
#include "d2d/radio.hpp"
#include "d2d/scenario.hpp"
#include "d2d/solution.hpp"

namespace d2d {

struct Centroid {
  double x = 0.0;
  double y = 0.0;
  int degree = 0;  // devices currently associated
  double prev_x = 0.0;
  double prev_y = 0.0;

  Point position() const { return {x, y}; }
  static Centroid at(Point p) { return {p.x, p.y, 0, p.x, p.y}; }
};

/// Which devices attract a centroid: only its associated cluster members,
/// or every device in the network.
enum class AttractionScope { ClusterMembers, AllDevices };

struct RForceParams {
  std::size_t k_centroids = 0;  // 0 selects ceil(N / delta_sr)
  double lambda = 0.8;
  double eta = 0.4;  // metres per step
  double kappa = 1.0;
  double stability_eps = 0.04;       // metres
  std::size_t stability_window = 6;  // iterations per averaging window
  std::size_t max_iters = 1000;
  int delta_sr = 10;
  int delta_lr = 30;
  AttractionScope scope = AttractionScope::ClusterMembers;
  Execution execution = Execution::Serial;
  bool rescue_outage = true;  // serve leftover outage devices as lone heads

  void validate() const;
};

/// Smallest head count whose clusters can hold every device: ceil(n / delta_sr).
std::size_t default_centroid_count(std::size_t n_devices, int delta_sr);

struct Association {
  std::vector<std::vector<int>> members;  // per centroid, in device order
  std::vector<int> centroid_of;           // per device, kNone if no capacity left
};

/// Visits devices in index order and gives each to the nearest centroid that
/// still has fewer than delta_sr members. Resets and then updates degrees.
Association associate_centroids(std::span<Centroid> centroids, std::span<const Point> devices,
                                int delta_sr, Execution ex = Execution::Serial);

/// Steps eta along the force direction; a zero force leaves the centroid in place.
void move_centroid(Centroid& c, const ForceVector& f, double eta);

std::vector<Centroid> scatter_centroids(std::size_t k, double width, double height,
                                        std::uint64_t seed);

struct Phase1Step {
  std::size_t iteration;
  std::span<const Centroid> centroids;  // after the move
  const Association& association;       // used to compute this step's forces
  std::span<const ForceVector> forces;
};
using Phase1Observer = std::function<void(const Phase1Step&)>;

struct Phase1Result {
  std::vector<Centroid> centroids;
  Association association;  // recomputed at the final positions
  std::size_t iterations = 0;
  bool converged = false;
};

Phase1Result phase1(std::span<const Point> devices, std::span<const double> reliabilities,
                    std::vector<Centroid> initial, const RForceParams& params,
                    const Phase1Observer& observer = {});

/// Scatters centroids uniformly over the scenario area from `seed`.
Phase1Result phase1(const Scenario& s, const RadioParams& radio, const RForceParams& params,
                    std::uint64_t seed, const Phase1Observer& observer = {});

struct HeadMapping {
  std::vector<int> head_of;  // kNone, own index for heads, or the head index
  std::vector<int> heads;    // in centroid order
  std::size_t skipped_centroids = 0;
};

/// Centroids in index order claim the nearest device not yet mapped; that
/// device heads the centroid's associated members.
HeadMapping phase2_map_centroids(std::span<const Centroid> centroids,
                                 std::span<const Point> devices, const Association& assoc);

/// Greedy head-to-AP attachment over (AP, head) pairs sorted by distance,
/// ties by AP id then head id. Returns an AP per head, kNone when every
/// reachable AP is full.
std::vector<int> phase3_associate_aps(const Scenario& s, std::span<const int> heads, int delta_lr);

/// Turns outage devices into single-device clusters served directly by an
/// AP with spare long-range capacity. (AP, device) pairs are taken by
/// ascending distance, ties by AP id then device id; links below the
/// long-range SNR threshold are never added. Returns the number rescued.
std::size_t rescue_outage_devices(const Scenario& s, const RadioParams& radio,
                                  ClusterSolution& sol, int delta_lr);

struct RForceRun {
  ClusterSolution solution;
  std::size_t k = 0;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t skipped_centroids = 0;
  std::size_t rescued = 0;
};

RForceRun run_rforce_detailed(const Scenario& s, const RadioParams& radio,
                              const RForceParams& params, std::uint64_t seed);

ClusterSolution run_rforce(const Scenario& s, const RadioParams& radio, const RForceParams& params,
                           std::uint64_t seed);

/// Runs K = k0-2 .. k0+2 (clamped to [1, N]) and keeps the lowest objective;
/// ties keep the smaller K. k0 is params.k_centroids or the default count.
RForceRun run_rforce_k_sweep(const Scenario& s, const RadioParams& radio,
                             const RForceParams& params, double rho, std::uint64_t seed);

}  // namespace d2d

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "d2d/geometry.hpp"
#include "d2d/kernels.hpp"
#include "d2d/radio.hpp"
#include "d2d/scenario.hpp"
#include "d2d/solution.hpp"

namespace d2d {

struct KMeansParams {
  std::size_t k = 1;
  int delta_sr = 10;
  int delta_lr = 30;
  std::size_t max_iters = 300;
  Execution execution = Execution::Serial;
};

struct KMeansRun {
  ClusterSolution solution;
  std::vector<Point> centroids;
  std::size_t iterations = 0;
  /// Within-cluster sum of squared distances after every accepted step.
  std::vector<double> sse_history;
};

/// Capacity-constrained Lloyd iteration on device positions, reliability-blind.
///
/// Centroids start on k distinct devices drawn from `seed`. The assignment
/// step is the same greedy nearest-with-capacity pass used by the force
/// heuristic. Because a greedy capacity pass is not an optimal assignment,
/// a reassignment that would raise the within-cluster SSE is rejected and
/// the iteration stops there. The device nearest each final centroid
/// becomes head; heads attach to APs with the same greedy procedure.
KMeansRun kmeans_detailed(const Scenario& s, const RadioParams& radio, const KMeansParams& params,
                          std::uint64_t seed);

ClusterSolution kmeans_cluster(const Scenario& s, const RadioParams& radio, std::size_t k,
                               int delta_sr, int delta_lr, std::uint64_t seed);

}  // namespace d2d

#pragma once

// Data-parallel inner loops of the centroid dynamics. Every kernel has a
// serial reference and an OpenMP version; both evaluate each output element
// with the same operation order, so their results are bitwise identical.

#include <span>
#include <vector>

#include "d2d/force.hpp"
#include "d2d/geometry.hpp"

namespace d2d {

enum class Execution { Serial, Parallel };

namespace kernels {

/// Index of the nearest centroid per device, ignoring capacity. Ties go to
/// the lowest index. `out` must have one slot per device.
void nearest_centroid_serial(std::span<const Point> devices, std::span<const Point> centroids,
                             std::span<int> out);
void nearest_centroid_parallel(std::span<const Point> devices, std::span<const Point> centroids,
                               std::span<int> out);

/// Net force on each centroid from the other centroids and from its
/// attractors. `attractors[k]` lists device indices pulling on centroid k;
/// when `all_devices` is set every device attracts every centroid instead.
struct ForceInputs {
  std::span<const PointCharge> centroids;
  std::span<const PointCharge> devices;
  const std::vector<std::vector<int>>* attractors = nullptr;
  bool all_devices = false;
  double kappa = 1.0;
};

void centroid_forces_serial(const ForceInputs& in, std::span<ForceVector> out);
void centroid_forces_parallel(const ForceInputs& in, std::span<ForceVector> out);

inline void nearest_centroid(Execution ex, std::span<const Point> devices,
                             std::span<const Point> centroids, std::span<int> out) {
  if (ex == Execution::Parallel) {
    nearest_centroid_parallel(devices, centroids, out);
  } else {
    nearest_centroid_serial(devices, centroids, out);
  }
}

inline void centroid_forces(Execution ex, const ForceInputs& in, std::span<ForceVector> out) {
  if (ex == Execution::Parallel) {
    centroid_forces_parallel(in, out);
  } else {
    centroid_forces_serial(in, out);
  }
}

}  // namespace kernels
}  // namespace d2d

#include "d2d/kernels.hpp"

#include <cstddef>
#include <limits>

namespace d2d {

ForceVector pairwise_force(double q_k, double q_j, Point pos_k, Point pos_j, double kappa) {
  const double dx = pos_k.x - pos_j.x;
  const double dy = pos_k.y - pos_j.y;
  const double d = std::hypot(dx, dy);
  if (d == 0.0 || q_k == 0.0 || q_j == 0.0) return {};
  const double floored = d < kMinForceDistance ? kMinForceDistance : d;
  const double magnitude = kappa * (q_k * q_j) / (floored * floored);
  return {magnitude * dx / d, magnitude * dy / d};
}

ForceVector total_force(const PointCharge& self, std::span<const PointCharge> others,
                        std::span<const PointCharge> members, double kappa) {
  ForceVector f;
  for (const auto& o : others) f += pairwise_force(self.charge, o.charge, self.pos, o.pos, kappa);
  for (const auto& m : members) f += pairwise_force(self.charge, m.charge, self.pos, m.pos, kappa);
  return f;
}

namespace kernels {

namespace {

inline int nearest_one(Point p, std::span<const Point> centroids) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < centroids.size(); ++k) {
    const double d = distance(p, centroids[k]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  return best;
}

// Same summation order as total_force: other centroids by index, then attractors.
inline ForceVector force_on(std::size_t k, const ForceInputs& in) {
  const PointCharge& self = in.centroids[k];
  ForceVector f;
  for (std::size_t j = 0; j < in.centroids.size(); ++j) {
    if (j == k) continue;
    f += pairwise_force(self.charge, in.centroids[j].charge, self.pos, in.centroids[j].pos, in.kappa);
  }
  if (in.all_devices) {
    for (const auto& d : in.devices) f += pairwise_force(self.charge, d.charge, self.pos, d.pos, in.kappa);
  } else if (in.attractors != nullptr) {
    for (int i : (*in.attractors)[k]) {
      const auto& d = in.devices[static_cast<std::size_t>(i)];
      f += pairwise_force(self.charge, d.charge, self.pos, d.pos, in.kappa);
    }
  }
  return f;
}

}  // namespace

void nearest_centroid_serial(std::span<const Point> devices, std::span<const Point> centroids,
                             std::span<int> out) {
  for (std::size_t i = 0; i < devices.size(); ++i) out[i] = nearest_one(devices[i], centroids);
}

void nearest_centroid_parallel(std::span<const Point> devices, std::span<const Point> centroids,
                               std::span<int> out) {
  const auto n = static_cast<std::ptrdiff_t>(devices.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = nearest_one(devices[static_cast<std::size_t>(i)], centroids);
  }
}

void centroid_forces_serial(const ForceInputs& in, std::span<ForceVector> out) {
  for (std::size_t k = 0; k < in.centroids.size(); ++k) out[k] = force_on(k, in);
}

void centroid_forces_parallel(const ForceInputs& in, std::span<ForceVector> out) {
  const auto n = static_cast<std::ptrdiff_t>(in.centroids.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = force_on(static_cast<std::size_t>(k), in);
  }
}

}  // namespace kernels
}  // namespace d2d

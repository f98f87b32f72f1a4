#pragma once

#include <cmath>
#include <span>

#include "d2d/geometry.hpp"

namespace d2d {

struct ForceVector {
  double fx = 0.0;
  double fy = 0.0;

  double norm() const { return std::hypot(fx, fy); }
  ForceVector& operator+=(const ForceVector& o) {
    fx += o.fx;
    fy += o.fy;
    return *this;
  }
  friend bool operator==(const ForceVector&, const ForceVector&) = default;
};

struct PointCharge {
  Point pos;
  double charge = 0.0;
};

/// Pairwise distances below this are floored in the inverse-square law.
inline constexpr double kMinForceDistance = 1e-6;

/// Devices carry a fixed negative charge equal to their reliability.
inline double device_charge(double reliability) { return -reliability; }

/// Centroid charge shrinks as its cluster fills: lambda / (n_k + 1).
inline double centroid_charge(int n_members, double lambda) {
  return lambda / (static_cast<double>(n_members) + 1.0);
}

/// Coulomb force on charge k due to charge j. Positive product pushes k
/// away from j, negative pulls k toward j. Coincident points exert nothing.
ForceVector pairwise_force(double q_k, double q_j, Point pos_k, Point pos_j, double kappa);

/// Repulsion from every entry of `others` plus attraction from `members`.
/// The caller excludes `self` from `others`.
ForceVector total_force(const PointCharge& self, std::span<const PointCharge> others,
                        std::span<const PointCharge> members, double kappa);

}  // namespace d2d

#pragma once

// Convex-hull geometry of points on the unit circle. The distance from the
// origin to the hull of the eigenphases of U1^dagger U2 is what fixes the
// product-probe distinguishability of a pair of unitaries.

#include <vector>

#include "uniprobe/qlinalg.hpp"

namespace uniprobe {

/// Nonempty list of complex numbers with modulus 1 (within 1e-9).
class PhasePointSet {
 public:
  static constexpr double kModulusTol = 1e-9;

  explicit PhasePointSet(std::vector<Complex> points);

  /// e^{i theta} for every angle.
  static PhasePointSet from_angles(const std::vector<double>& angles);

  const std::vector<Complex>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Complex> points_;
};

/// Closest point of the hull to the origin, written as a convex combination.
struct HullResult {
  double minNorm = 1.0;
  std::vector<double> weights;  ///< one per input point, sum 1
  Complex witness;              ///< sum_j weights[j] * points[j]
};

/// Distance from the origin to conv(points), by exact enumeration over
/// vertices, edges and (when the origin is inside) triangles. Among weight
/// vectors attaining the minimum, the one with the fewest nonzero entries
/// and lowest indices is returned.
HullResult min_hull_norm(const PhasePointSet& set);

inline constexpr double kOriginInHullTol = 1e-9;

/// True iff min_hull_norm(set) <= tol, i.e. the points do not fit in an open
/// half-plane through the origin.
bool origin_in_hull(const PhasePointSet& set, double tol = kOriginInHullTol);

}  // namespace uniprobe

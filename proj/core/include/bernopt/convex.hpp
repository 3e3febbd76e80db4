#pragma once

#include <array>
#include <vector>

#include "bernopt/bernstein.hpp"

namespace bernopt {

/// Finite point set whose convex hull is the query object for GJK.
/// 2-D sets are embedded in the z = 0 plane.
struct ConvexPointSet {
  int dim = 0;  // 2 or 3
  std::vector<std::array<double, 3>> points;

  static ConvexPointSet from(const std::vector<std::vector<double>>& pts);
};

/// Control points of a 2-D/3-D curve, as a hull query object.
ConvexPointSet control_hull(const BernsteinPoly& p);

/// Certified distance bracket between two convex hulls.
/// lower <= d(hull(a), hull(b)) <= upper always holds; on normal convergence
/// upper - lower <= tol * max(1, upper). intersecting implies lower == upper == 0.
struct GjkResult {
  double lower = 0.0;
  double upper = 0.0;
  bool intersecting = false;
  int iterations = 0;
};

GjkResult gjk(const ConvexPointSet& a, const ConvexPointSet& b, double tol = 1e-9);

/// Euclidean distance between the hulls; 0 when they intersect.
double gjk_distance(const ConvexPointSet& a, const ConvexPointSet& b, double tol = 1e-9);

}  // namespace bernopt

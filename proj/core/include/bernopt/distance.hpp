#pragma once

#include <limits>

#include "bernopt/bernstein.hpp"
#include "bernopt/convex.hpp"

namespace bernopt {

struct DistanceQuery {
  double alpha = std::numeric_limits<double>::infinity();
  double epsilon = 1e-4;
  int max_depth = 64;
  double gjk_tol = 1e-9;
};

struct DistanceResult {
  double distance = 0.0;
  bool depth_exhausted = false;
};

/// Minimum spatial distance min_{t,s} |a(t) - b(s)| within epsilon.
/// Upper bounds come from endpoint pairs, lower bounds from GJK on the
/// control-point hulls; both curves are bisected recursively. The intervals
/// of a and b may differ (the query is spatial, not temporal).
DistanceResult min_distance(const BernsteinPoly& a, const BernsteinPoly& b,
                            const DistanceQuery& q = {});

/// Same search with the second operand a fixed convex shape.
DistanceResult min_distance_to_shape(const BernsteinPoly& a, const ConvexPointSet& shape,
                                     const DistanceQuery& q = {});

/// NoCollision is a certificate (every surviving hull pair is disjoint);
/// CollisionPossible is returned after max_iter rounds of midpoint splitting
/// or when the subdivision budget is exhausted.
enum class CollisionVerdict { NoCollision, CollisionPossible };

CollisionVerdict collision_check(const BernsteinPoly& a, const BernsteinPoly& b,
                                 int max_iter = 32);

}  // namespace bernopt

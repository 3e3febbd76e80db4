#pragma once

#include <string>

#include "bernopt/bernstein.hpp"
#include "bernopt/convex.hpp"
#include "bernopt/rational.hpp"

namespace bernopt {

// Wire formats:
//   curve:     {"t0": number, "tf": number, "coeffs": [[row], [row], ...]}
//   rational:  same plus "weights": [...]
//   point set: {"points": [[x, y], ...]}
// Rows of "coeffs" are spatial dimensions.

std::string to_json(const BernsteinPoly& p);
std::string to_json(const RationalBernsteinPoly& rp);
std::string to_json(const ConvexPointSet& s);

BernsteinPoly poly_from_json(const std::string& text);
RationalBernsteinPoly rational_from_json(const std::string& text);
ConvexPointSet point_set_from_json(const std::string& text);

/// Distinguishes a curve document from a point-set document.
enum class GeometryKind { Poly, PointSet };
GeometryKind classify_geometry_json(const std::string& text);

}  // namespace bernopt

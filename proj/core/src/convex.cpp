#include "bernopt/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bernopt {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 neg(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
Vec3 axpy(const Vec3& a, double s, const Vec3& b) {
  return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm2(const Vec3& a) { return dot(a, a); }

Vec3 support_point(const ConvexPointSet& s, const Vec3& d) {
  double best = -std::numeric_limits<double>::infinity();
  size_t best_i = 0;
  for (size_t i = 0; i < s.points.size(); ++i) {
    const double v = dot(s.points[i], d);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  return s.points[best_i];
}

// Closest point to the origin on a segment; keeps the supporting vertices.
Vec3 closest_on_segment(std::vector<Vec3>& simplex) {
  const Vec3 a = simplex[0], b = simplex[1];
  const Vec3 ab = sub(b, a);
  const double denom = norm2(ab);
  if (denom <= 0.0) {
    simplex = {a};
    return a;
  }
  const double t = -dot(a, ab) / denom;
  if (t <= 0.0) {
    simplex = {a};
    return a;
  }
  if (t >= 1.0) {
    simplex = {b};
    return b;
  }
  return axpy(a, t, ab);
}

// Closest point to the origin on a triangle (Ericson-style Voronoi regions).
Vec3 closest_on_triangle(std::vector<Vec3>& simplex) {
  const Vec3 a = simplex[0], b = simplex[1], c = simplex[2];
  const Vec3 ab = sub(b, a), ac = sub(c, a), ap = neg(a);
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) {
    simplex = {a};
    return a;
  }
  const Vec3 bp = neg(b);
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) {
    simplex = {b};
    return b;
  }
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double denom = d1 - d3;
    const double t = (denom != 0.0) ? d1 / denom : 0.0;
    simplex = {a, b};
    return axpy(a, t, ab);
  }
  const Vec3 cp = neg(c);
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) {
    simplex = {c};
    return c;
  }
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double denom = d2 - d6;
    const double t = (denom != 0.0) ? d2 / denom : 0.0;
    simplex = {a, c};
    return axpy(a, t, ac);
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double denom = (d4 - d3) + (d5 - d6);
    const double t = (denom != 0.0) ? (d4 - d3) / denom : 0.0;
    simplex = {b, c};
    return axpy(b, t, sub(c, b));
  }
  const double denom = va + vb + vc;
  if (denom == 0.0 || !std::isfinite(denom)) {
    // Degenerate (collinear) triangle: fall back to the best edge.
    double best = std::numeric_limits<double>::infinity();
    std::vector<Vec3> best_simplex;
    Vec3 best_point{};
    const std::array<std::pair<int, int>, 3> edges{{{0, 1}, {0, 2}, {1, 2}}};
    for (const auto& [i, j] : edges) {
      std::vector<Vec3> edge{simplex[i], simplex[j]};
      const Vec3 p = closest_on_segment(edge);
      const double d = norm2(p);
      if (d < best) {
        best = d;
        best_simplex = edge;
        best_point = p;
      }
    }
    simplex = best_simplex;
    return best_point;
  }
  const double v = vb / denom, w = vc / denom;
  return axpy(axpy(a, v, ab), w, ac);
}

Vec3 closest_on_tetrahedron(std::vector<Vec3>& simplex) {
  // Origin-containment test per face; degenerate volumes fall through to the
  // face search below, which is the conservative direction.
  const Vec3 a = simplex[0], b = simplex[1], c = simplex[2], d = simplex[3];
  auto outside = [](const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& opp) {
    const Vec3 n = cross(sub(p1, p0), sub(p2, p0));
    const double sign_origin = dot(neg(p0), n);
    const double sign_opp = dot(sub(opp, p0), n);
    return sign_origin * sign_opp < 0.0 || sign_opp == 0.0;
  };
  const bool out_abc = outside(a, b, c, d);
  const bool out_abd = outside(a, b, d, c);
  const bool out_acd = outside(a, c, d, b);
  const bool out_bcd = outside(b, c, d, a);
  if (!out_abc && !out_abd && !out_acd && !out_bcd) {
    return {0.0, 0.0, 0.0};  // origin enclosed
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vec3> best_simplex;
  Vec3 best_point{};
  const std::array<std::array<int, 3>, 4> faces{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  const std::array<bool, 4> check{out_abc, out_abd, out_acd, out_bcd};
  for (int f = 0; f < 4; ++f) {
    if (!check[f]) continue;
    std::vector<Vec3> tri{simplex[faces[f][0]], simplex[faces[f][1]], simplex[faces[f][2]]};
    const Vec3 p = closest_on_triangle(tri);
    const double dist = norm2(p);
    if (dist < best) {
      best = dist;
      best_simplex = tri;
      best_point = p;
    }
  }
  simplex = best_simplex;
  return best_point;
}

Vec3 closest_and_reduce(std::vector<Vec3>& simplex) {
  switch (simplex.size()) {
    case 1:
      return simplex[0];
    case 2:
      return closest_on_segment(simplex);
    case 3:
      return closest_on_triangle(simplex);
    case 4:
      return closest_on_tetrahedron(simplex);
    default:
      throw std::logic_error("gjk: simplex overflow");
  }
}

}  // namespace

ConvexPointSet ConvexPointSet::from(const std::vector<std::vector<double>>& pts) {
  if (pts.empty()) throw std::domain_error("ConvexPointSet: empty point set");
  const int dim = static_cast<int>(pts[0].size());
  if (dim != 2 && dim != 3)
    throw std::domain_error("ConvexPointSet: points must be 2-D or 3-D");
  ConvexPointSet s;
  s.dim = dim;
  s.points.reserve(pts.size());
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != dim)
      throw std::domain_error("ConvexPointSet: inconsistent point dimensions");
    Vec3 v{p[0], p[1], dim == 3 ? p[2] : 0.0};
    for (double x : v)
      if (!std::isfinite(x)) throw std::domain_error("ConvexPointSet: non-finite point");
    s.points.push_back(v);
  }
  return s;
}

ConvexPointSet control_hull(const BernsteinPoly& p) {
  std::vector<std::vector<double>> pts;
  pts.reserve(p.degree() + 1);
  for (int i = 0; i <= p.degree(); ++i) pts.push_back(p.control_point(i));
  return ConvexPointSet::from(pts);
}

GjkResult gjk(const ConvexPointSet& a, const ConvexPointSet& b, double tol) {
  if (a.dim != b.dim) throw std::domain_error("gjk: dimension mismatch");
  if (!(tol > 0.0)) throw std::domain_error("gjk: tolerance must be positive");

  double scale = 1.0;
  for (const auto& p : a.points)
    for (double x : p) scale = std::max(scale, std::abs(x));
  for (const auto& p : b.points)
    for (double x : p) scale = std::max(scale, std::abs(x));
  const double zero_eps = 1e-13 * scale;

  auto minkowski_support = [&](const Vec3& d) {
    return sub(support_point(a, d), support_point(b, neg(d)));
  };

  GjkResult res;
  Vec3 v = minkowski_support({1.0, 0.0, 0.0});
  std::vector<Vec3> simplex{v};
  double lower = 0.0;

  const int max_iter = 128;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const double vlen = std::sqrt(norm2(v));
    if (vlen <= zero_eps) {
      return {0.0, 0.0, true, iter};
    }
    const Vec3 w = minkowski_support(neg(v));
    const double vw = dot(v, w);
    lower = std::max(lower, vw / vlen);
    if (norm2(v) - vw <= tol * std::max(1.0, vlen) * vlen) break;

    bool duplicate = false;
    for (const auto& s : simplex)
      if (norm2(sub(s, w)) <= zero_eps * zero_eps) duplicate = true;
    if (duplicate) break;

    simplex.push_back(w);
    v = closest_and_reduce(simplex);
  }

  const double upper = std::sqrt(norm2(v));
  if (upper <= zero_eps) return {0.0, 0.0, true, iter};
  res.lower = std::clamp(lower, 0.0, upper);
  res.upper = upper;
  res.intersecting = false;
  res.iterations = iter;
  return res;
}

double gjk_distance(const ConvexPointSet& a, const ConvexPointSet& b, double tol) {
  const GjkResult r = gjk(a, b, tol);
  return r.intersecting ? 0.0 : r.upper;
}

}  // namespace bernopt

#include "bernopt/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bernopt {

namespace {

// Pieces carry only control points; distance queries never need the time
// axis and midpoint subdivision is lambda = 1/2 regardless of interval.
Mat split_half(const Mat& m, bool left_half) {
  const int n = m.cols() - 1;
  Mat out(m.rows(), n + 1);
  std::vector<double> work(n + 1);
  for (int d = 0; d < m.rows(); ++d) {
    for (int i = 0; i <= n; ++i) work[i] = m(d, i);
    if (left_half) out(d, 0) = work[0];
    else out(d, n) = work[n];
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i <= n - j; ++i) work[i] = 0.5 * (work[i] + work[i + 1]);
      if (left_half) out(d, j) = work[0];
      else out(d, n - j) = work[n - j];
    }
  }
  return out;
}

ConvexPointSet hull_of(const Mat& m, int dim) {
  ConvexPointSet s;
  s.dim = dim;
  s.points.reserve(m.cols());
  for (int c = 0; c < m.cols(); ++c)
    s.points.push_back({m(0, c), m.rows() > 1 ? m(1, c) : 0.0, m.rows() > 2 ? m(2, c) : 0.0});
  return s;
}

ConvexPointSet point_set(const Mat& m, int col, int dim) {
  ConvexPointSet s;
  s.dim = dim;
  s.points.push_back({m(0, col), m.rows() > 1 ? m(1, col) : 0.0, m.rows() > 2 ? m(2, col) : 0.0});
  return s;
}

double endpoint_distance(const Mat& p, int pc, const Mat& q, int qc) {
  double s = 0.0;
  for (int d = 0; d < p.rows(); ++d) {
    const double diff = p(d, pc) - q(d, qc);
    s += diff * diff;
  }
  return std::sqrt(s);
}

double centroid_gap(const Mat& p, const Mat& q) {
  double s = 0.0;
  for (int d = 0; d < p.rows(); ++d) {
    double cp = 0.0, cq = 0.0;
    for (int c = 0; c < p.cols(); ++c) cp += p(d, c);
    for (int c = 0; c < q.cols(); ++c) cq += q(d, c);
    const double diff = cp / p.cols() - cq / q.cols();
    s += diff * diff;
  }
  return s;
}

struct CurveCurveSearch {
  int dim;
  double epsilon;
  int max_depth;
  double gjk_tol;
  bool exhausted = false;

  double run(const Mat& p, const Mat& q, double alpha, int depth) {
    double upper = endpoint_distance(p, 0, q, 0);
    upper = std::min(upper, endpoint_distance(p, 0, q, q.cols() - 1));
    upper = std::min(upper, endpoint_distance(p, p.cols() - 1, q, 0));
    upper = std::min(upper, endpoint_distance(p, p.cols() - 1, q, q.cols() - 1));

    const GjkResult g = gjk(hull_of(p, dim), hull_of(q, dim), gjk_tol);
    const double lower = g.intersecting ? 0.0 : g.lower;

    if (upper < alpha) alpha = upper;
    if (lower >= alpha) return alpha;  // this box cannot beat the incumbent
    if (upper - lower < epsilon) return alpha;
    if (depth >= max_depth) {
      exhausted = true;
      return std::min(alpha, lower);
    }

    const Mat pa = split_half(p, true), pb = split_half(p, false);
    const Mat qa = split_half(q, true), qb = split_half(q, false);
    struct Child {
      const Mat* p;
      const Mat* q;
      double proxy;
    };
    std::vector<Child> children{{&pa, &qa, 0}, {&pa, &qb, 0}, {&pb, &qa, 0}, {&pb, &qb, 0}};
    for (auto& c : children) c.proxy = centroid_gap(*c.p, *c.q);
    std::sort(children.begin(), children.end(),
              [](const Child& a, const Child& b) { return a.proxy < b.proxy; });
    for (const auto& c : children) alpha = std::min(alpha, run(*c.p, *c.q, alpha, depth + 1));
    return alpha;
  }
};

struct CurveShapeSearch {
  int dim;
  const ConvexPointSet* shape;
  double epsilon;
  int max_depth;
  double gjk_tol;
  bool exhausted = false;

  double run(const Mat& p, double alpha, int depth) {
    double upper = gjk_distance(point_set(p, 0, dim), *shape, gjk_tol);
    upper = std::min(upper, gjk_distance(point_set(p, p.cols() - 1, dim), *shape, gjk_tol));

    const GjkResult g = gjk(hull_of(p, dim), *shape, gjk_tol);
    const double lower = g.intersecting ? 0.0 : g.lower;

    if (upper < alpha) alpha = upper;
    if (lower >= alpha) return alpha;
    if (upper - lower < epsilon) return alpha;
    if (depth >= max_depth) {
      exhausted = true;
      return std::min(alpha, lower);
    }
    const Mat pa = split_half(p, true), pb = split_half(p, false);
    alpha = std::min(alpha, run(pa, alpha, depth + 1));
    alpha = std::min(alpha, run(pb, alpha, depth + 1));
    return alpha;
  }
};

void check_query(const DistanceQuery& q) {
  if (!(q.epsilon > 0.0)) throw std::domain_error("min_distance: epsilon must be positive");
  if (q.max_depth < 1) throw std::domain_error("min_distance: max_depth must be >= 1");
}

int common_dim(int da, int db, const char* what) {
  if (da != db) throw std::domain_error(std::string(what) + ": dimension mismatch");
  if (da != 2 && da != 3)
    throw std::domain_error(std::string(what) + ": operands must be 2-D or 3-D");
  return da;
}

}  // namespace

DistanceResult min_distance(const BernsteinPoly& a, const BernsteinPoly& b,
                            const DistanceQuery& q) {
  check_query(q);
  const int dim = common_dim(a.dimension(), b.dimension(), "min_distance");
  CurveCurveSearch search{dim, q.epsilon, q.max_depth, q.gjk_tol};
  const double d = search.run(a.coeffs(), b.coeffs(), q.alpha, 0);
  return {d, search.exhausted};
}

DistanceResult min_distance_to_shape(const BernsteinPoly& a, const ConvexPointSet& shape,
                                     const DistanceQuery& q) {
  check_query(q);
  const int dim = common_dim(a.dimension(), shape.dim, "min_distance_to_shape");
  CurveShapeSearch search{dim, &shape, q.epsilon, q.max_depth, q.gjk_tol};
  const double d = search.run(a.coeffs(), q.alpha, 0);
  return {d, search.exhausted};
}

CollisionVerdict collision_check(const BernsteinPoly& a, const BernsteinPoly& b, int max_iter) {
  if (max_iter < 1) throw std::domain_error("collision_check: max_iter must be >= 1");
  const int dim = common_dim(a.dimension(), b.dimension(), "collision_check");

  std::vector<std::pair<Mat, Mat>> worklist{{a.coeffs(), b.coeffs()}};
  long budget = 1 << 16;  // total hull-pair tests before giving up conservatively
  for (int k = 0; k < max_iter; ++k) {
    std::vector<std::pair<Mat, Mat>> surviving;
    for (const auto& [p, q] : worklist) {
      if (--budget < 0) return CollisionVerdict::CollisionPossible;
      const GjkResult g = gjk(hull_of(p, dim), hull_of(q, dim));
      if (g.intersecting || g.lower <= 0.0) {
        surviving.emplace_back(split_half(p, true), split_half(q, true));
        surviving.emplace_back(split_half(p, true), split_half(q, false));
        surviving.emplace_back(split_half(p, false), split_half(q, true));
        surviving.emplace_back(split_half(p, false), split_half(q, false));
      }
    }
    if (surviving.empty()) return CollisionVerdict::NoCollision;
    worklist = std::move(surviving);
  }
  return CollisionVerdict::CollisionPossible;
}

}  // namespace bernopt

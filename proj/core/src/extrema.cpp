#include "bernopt/extrema.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bernopt {

namespace {

// Recursion state on raw 1-D coefficients; intervals are irrelevant to the
// values of extrema, so subdivision works on the normalized parameter.
struct Node {
  std::vector<double> c;
};

struct MaxSearch {
  double epsilon;
  int max_depth;
  bool conservative;
  bool exhausted = false;

  double run(const Node& node, double alpha, int depth) {
    const int n = static_cast<int>(node.c.size()) - 1;
    const double lb = std::max(node.c.front(), node.c.back());
    int i_ub = 0;
    for (int i = 1; i <= n; ++i)
      if (node.c[i] > node.c[i_ub]) i_ub = i;
    const double ub = node.c[i_ub];

    if (lb > alpha) alpha = lb;
    if (alpha > ub) return alpha;  // prune: nothing better in this hull
    if (ub - lb < epsilon) return conservative ? std::max(alpha, ub) : alpha;
    if (depth >= max_depth) {
      exhausted = true;
      return std::max(alpha, ub);
    }

    // Subdivide where the bound is loosest: the parameter under the largest
    // coefficient. i_ub is strictly interior here; an endpoint argmax would
    // have made ub == lb and returned above.
    const double lambda = static_cast<double>(i_ub) / n;
    Node left, right;
    left.c.resize(n + 1);
    right.c.resize(n + 1);
    std::vector<double> work = node.c;
    left.c[0] = work[0];
    right.c[n] = work[n];
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i <= n - j; ++i)
        work[i] = (1.0 - lambda) * work[i] + lambda * work[i + 1];
      left.c[j] = work[0];
      right.c[n - j] = work[n - j];
    }

    // Visit the more promising child first to sharpen the incumbent.
    const double lmax = *std::max_element(left.c.begin(), left.c.end());
    const double rmax = *std::max_element(right.c.begin(), right.c.end());
    const Node& first = (lmax >= rmax) ? left : right;
    const Node& second = (lmax >= rmax) ? right : left;
    alpha = std::max(alpha, run(first, alpha, depth + 1));
    alpha = std::max(alpha, run(second, alpha, depth + 1));
    return alpha;
  }
};

}  // namespace

std::pair<double, double> coeff_bounds(const BernsteinPoly& p, std::optional<int> elevate_to) {
  if (p.dimension() != 1) throw std::domain_error("coeff_bounds: polynomial is not 1-D");
  const BernsteinPoly q = elevate_to ? elevate(p, *elevate_to) : p;
  double lo = q.coeffs()(0, 0), hi = lo;
  for (int c = 1; c < q.coeffs().cols(); ++c) {
    lo = std::min(lo, q.coeffs()(0, c));
    hi = std::max(hi, q.coeffs()(0, c));
  }
  return {lo, hi};
}

ExtremaResult maximum(const BernsteinPoly& p, const ExtremaQuery& q) {
  if (p.dimension() != 1) throw std::domain_error("maximum: polynomial is not 1-D");
  if (!(q.epsilon > 0.0)) throw std::domain_error("maximum: epsilon must be positive");
  if (q.max_depth < 1) throw std::domain_error("maximum: max_depth must be >= 1");
  MaxSearch search{q.epsilon, q.max_depth, q.conservative};
  Node root{p.coeffs().row(0)};
  const double value = search.run(root, q.alpha, 0);
  return {value, search.exhausted};
}

ExtremaResult minimum(const BernsteinPoly& p, const ExtremaQuery& q) {
  ExtremaResult r = maximum(scale(p, -1.0), q);
  r.value = -r.value;
  return r;
}

}  // namespace bernopt

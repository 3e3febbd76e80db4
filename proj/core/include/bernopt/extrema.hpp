#pragma once

#include <optional>
#include <utility>

#include "bernopt/bernstein.hpp"

namespace bernopt {

/// Branch-and-bound query parameters. `alpha` is the incumbent (a very
/// negative starting value for maxima); `conservative` returns the hull upper
/// bound instead of the incumbent when a node converges, so the result is
/// guaranteed to be >= the true maximum.
struct ExtremaQuery {
  double alpha = -1e300;
  double epsilon = 1e-6;
  int max_depth = 64;
  bool conservative = false;
};

struct ExtremaResult {
  double value = 0.0;
  bool depth_exhausted = false;
};

/// Conservative (min, max) of the coefficients of a 1-D polynomial, tightened
/// by optional degree elevation. Always encloses the true curve range.
std::pair<double, double> coeff_bounds(const BernsteinPoly& p,
                                       std::optional<int> elevate_to = std::nullopt);

/// Maximum of a 1-D polynomial over its interval, within epsilon
/// (branch-and-bound on the coefficient hull). Depth exhaustion returns the
/// surviving upper bound and sets the flag.
ExtremaResult maximum(const BernsteinPoly& p, const ExtremaQuery& q = {});

/// Minimum via coefficient negation.
ExtremaResult minimum(const BernsteinPoly& p, const ExtremaQuery& q = {});

}  // namespace bernopt

#pragma once

#include <cstdint>

#include "bernopt/nlp.hpp"

namespace bernopt {

struct SolverOptions {
  int max_outer_iters = 40;
  int max_inner_iters = 400;
  double feasibility_tol = 1e-4;
  double step_tol = 1e-12;
  double penalty_init = 10.0;
  double penalty_growth = 5.0;
  double fd_step = 1e-6;  // relative forward-difference step
  std::uint64_t seed = 0;
};

/// Augmented-Lagrangian outer loop around an L-BFGS inner minimizer with
/// forward-difference gradients. Deterministic for fixed inputs and seed.
SolverResult solve(const NlpProblem& problem, const SolverOptions& opts = {});

/// Richardson-style check of the internal gradient estimate of the objective
/// at x: compares two finite-difference step sizes and returns the largest
/// relative disagreement.
double check_gradient(const NlpProblem& problem, const std::vector<double>& x);

}  // namespace bernopt

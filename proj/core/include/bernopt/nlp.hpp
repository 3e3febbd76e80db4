#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bernopt/bernstein.hpp"

namespace bernopt {

/// Objective and constraint bundle over a flat decision vector.
/// Conventions: eq entries h(x) = 0, ineq entries g(x) <= 0.
///
/// `eval_all` evaluates everything in one pass and is what the solver calls;
/// the per-constraint function lists are views over the same computation for
/// callers that want individual values.
struct NlpProblem {
  int dim = 0;
  std::vector<double> initial_guess;
  std::string layout;

  std::function<double(const std::vector<double>&)> objective;
  std::vector<std::function<double(const std::vector<double>&)>> eq;
  std::vector<std::function<double(const std::vector<double>&)>> ineq;

  struct Eval {
    double objective = 0.0;
    std::vector<double> eq;
    std::vector<double> ineq;
  };
  std::function<Eval(const std::vector<double>&)> eval_all;

  /// Decodes a decision vector into the trajectories it represents
  /// (empty for problems that are not trajectory transcriptions).
  std::function<std::vector<BernsteinPoly>(const std::vector<double>&)> decode;

  /// Per-vehicle final times for free-final-time transcriptions.
  std::function<std::vector<double>(const std::vector<double>&)> final_times;

  /// Fills eval_all from objective/eq/ineq (used by hand-built problems).
  void wire_eval_from_lists();
  /// Fills objective/eq/ineq wrappers from eval_all (used by transcriptions).
  void wire_lists_from_eval(size_t n_eq, size_t n_ineq);
};

struct SolverResult {
  std::vector<double> x;
  double objective = 0.0;
  bool feasible = false;
  double max_violation = 0.0;
  int iterations = 0;
  std::vector<BernsteinPoly> trajectories;
  std::vector<double> final_times;

  struct OuterLog {
    double merit_before = 0.0;
    double merit_after = 0.0;
    double max_violation = 0.0;
    double penalty = 0.0;
  };
  std::vector<OuterLog> outer_log;
};

}  // namespace bernopt

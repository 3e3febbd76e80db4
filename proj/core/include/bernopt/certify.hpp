#pragma once

#include <string>
#include <vector>

#include "bernopt/nlp.hpp"
#include "bernopt/scenario.hpp"

namespace bernopt {

/// One certified worst-case constraint margin. `margin` is in natural units
/// where one exists (m, m/s); `scaled` is the dimensionless value the
/// pass/fail decision uses (>= -tolerance passes).
struct CertEntry {
  std::string name;
  double margin = 0.0;
  double scaled = 0.0;
};

struct CertReport {
  std::vector<CertEntry> entries;
  double tolerance = 1e-3;
  bool feasible = true;
  std::vector<std::string> violations;
};

/// Post-hoc continuous-time verification of every scenario constraint using
/// the branch-and-bound extrema machinery on the decoded trajectories,
/// independent of how constraints were enforced during optimization.
CertReport certify_trajectories(const std::vector<BernsteinPoly>& trajs,
                                const ScenarioConfig& cfg, double eps = 1e-3);

CertReport certify(const SolverResult& result, const ScenarioConfig& cfg, double eps = 1e-3);

std::string to_json(const CertReport& report);

}  // namespace bernopt

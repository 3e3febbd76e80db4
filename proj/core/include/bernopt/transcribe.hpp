#pragma once

#include <vector>

#include "bernopt/nlp.hpp"
#include "bernopt/scenario.hpp"
#include "bernopt/solver.hpp"

namespace bernopt {

enum class ConstraintSense { UpperBound, LowerBound };

/// Reduces a continuous-time bound "poly(t) <= c for all t" (UpperBound) or
/// "poly(t) >= c" (LowerBound) to scalar values in g <= 0 convention.
/// Hull mode yields one scalar per (optionally elevated) coefficient; extrema
/// mode yields a single scalar from the conservative branch-and-bound value
/// at tolerance enf.eps * scale (scale defaults to max(1, |c|)).
std::vector<double> reduce_constraint(const BernsteinPoly& poly, const Enforcement& enf,
                                      ConstraintSense sense, double c, double scale = 0.0);

/// Number of scalars reduce_constraint will produce for a given poly degree.
int reduce_constraint_size(int poly_degree, const Enforcement& enf);

/// Builds the nonlinear program for a scenario. Boundary conditions
/// (positions and, where applicable, endpoint headings/speeds) are eliminated
/// by construction: the decode mapping writes them into the control points,
/// so the decision vector holds only interior control points and any free
/// final times.
NlpProblem transcribe(const ScenarioConfig& cfg);
NlpProblem transcribe_dubins(const ScenarioConfig& cfg);
NlpProblem transcribe_atc(const ScenarioConfig& cfg);
NlpProblem transcribe_cluttered(const ScenarioConfig& cfg);
NlpProblem transcribe_swarm_centralized(const ScenarioConfig& cfg);

/// Sequential planning: vehicle 1 is unconstrained by peers, vehicle i sees
/// vehicles 1..i-1 as fixed. Per-vehicle failures are reported in the result
/// list; later vehicles are still attempted.
std::vector<SolverResult> plan_swarm_decentralized(const ScenarioConfig& cfg,
                                                   const SolverOptions& opts = {});

/// Hull-bounds solve first, then an extrema-mode solve warm-started from it.
SolverResult solve_two_phase(const ScenarioConfig& cfg, const SolverOptions& opts = {});

/// One-call driver honoring cfg.enforcement (extrema mode runs two-phase) and
/// dispatching decentralized scenarios to the sequential planner.
struct PlanOutcome {
  std::vector<SolverResult> results;
  std::vector<BernsteinPoly> trajectories;  // one per vehicle
  std::vector<double> final_times;          // one per vehicle
  double objective = 0.0;
  bool feasible = false;
  int iterations = 0;
};
PlanOutcome plan_scenario(const ScenarioConfig& cfg, const SolverOptions& opts = {});

/// Left part of p on [t0, T]; returns p unchanged when T >= tf.
BernsteinPoly restrict_to(const BernsteinPoly& p, double T);

}  // namespace bernopt

#include "bernopt/transcribe.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "bernopt/extrema.hpp"
#include "bernopt/kinematics.hpp"

namespace bernopt {

namespace {

constexpr double kTfFloor = 0.1;         // free final times stay clear of zero
constexpr double kTfDecodeFloor = 0.05;  // decode stays total below the floor
constexpr double kBoundPad = 2e-3;       // enforce slightly inside the limits
constexpr double kArcSmooth = 1e-12;
constexpr double kReciprocalDelta = 1e-6;

bool heading_kind(ScenarioKind k) {
  return k == ScenarioKind::Dubins || k == ScenarioKind::Atc || k == ScenarioKind::Cluttered;
}

double point_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double tf_guess(const VehicleSpec& v, double v_max) {
  const double d = point_dist(v.p0, v.pf);
  double denom = 0.5 * (v.v0 + v.vf);
  if (!(denom > 1e-9)) denom = std::max(0.5 * v_max, 1e-3);
  return std::max(d / denom, 5.0 * kTfFloor);
}

struct Layout {
  int n = 0;
  int dims = 0;
  int m = 0;
  bool headings = false;
  bool free_tf = false;
  int first_free_col = 0;
  int last_free_col = 0;
  int coeffs_per_vehicle = 0;
  int vars_per_vehicle = 0;
  int total = 0;

  int offset(int veh) const { return veh * vars_per_vehicle; }
  int tf_index(int veh) const { return offset(veh) + coeffs_per_vehicle; }
};

Layout make_layout(const ScenarioConfig& cfg) {
  Layout L;
  L.n = cfg.degree;
  L.dims = cfg.dimension;
  L.m = static_cast<int>(cfg.vehicles.size());
  L.headings = heading_kind(cfg.kind);
  L.free_tf = cfg.free_tf;
  L.first_free_col = L.headings ? 2 : 1;
  L.last_free_col = L.headings ? L.n - 2 : L.n - 1;
  const int free_cols = std::max(0, L.last_free_col - L.first_free_col + 1);
  L.coeffs_per_vehicle = free_cols * L.dims;
  L.vars_per_vehicle = L.coeffs_per_vehicle + (L.free_tf ? 1 : 0);
  L.total = L.m * L.vars_per_vehicle;
  return L;
}

// The whole scenario machinery: decoding, objective, and constraint
// evaluation, shared by the fused eval_all and the per-slot functions.
//
// The decision vector is dimensionless: control-point entries are deviations
// from a reference guess in units of the vehicle's route length, and each
// free final time is a multiple of its guess. Keeps the problem conditioned
// the same whether coordinates are meters across a room or across a country.
struct Transcriber {
  ScenarioConfig cfg;
  Layout layout;
  std::vector<BernsteinPoly> fixed_peers;  // decentralized: already planned
  int decentral_index = 0;                 // global index of the active vehicle
  std::vector<double> guess;
  std::vector<Mat> ref;             // per-vehicle reference control points
  std::vector<double> len_scale;    // per-vehicle length unit
  std::vector<double> tf_scale;     // per-vehicle tf unit (free tf only)

  explicit Transcriber(ScenarioConfig c) : cfg(std::move(c)), layout(make_layout(cfg)) {
    for (const auto& v : cfg.vehicles)
      if (heading_kind(cfg.kind) && point_dist(v.p0, v.pf) < 1e-12 && v.v0 > 0.0)
        throw std::invalid_argument(
            "transcribe: coincident endpoints with nonzero endpoint speed are infeasible");
    build_guess();
  }

  void build_guess() {
    guess.assign(layout.total, 0.0);
    ref.assign(layout.m, Mat(layout.dims, layout.n + 1));
    len_scale.assign(layout.m, 1.0);
    tf_scale.assign(layout.m, 1.0);
    const bool dodge = (cfg.kind == ScenarioKind::Dubins || cfg.kind == ScenarioKind::Cluttered) &&
                       !cfg.obstacles.empty();
    const double base_clear = cfg.kind == ScenarioKind::Dubins ? cfg.d_s : cfg.d_obs;
    for (int veh = 0; veh < layout.m; ++veh) {
      const VehicleSpec& v = cfg.vehicles[veh];
      len_scale[veh] = std::max(point_dist(v.p0, v.pf), 1.0);
      if (layout.free_tf) tf_scale[veh] = tf_guess(v, cfg.v_max);
      for (int c = 0; c <= layout.n; ++c) {
        const double s = static_cast<double>(c) / layout.n;
        std::vector<double> p(layout.dims);
        for (int d = 0; d < layout.dims; ++d) p[d] = v.p0[d] + s * (v.pf[d] - v.p0[d]);
        if (dodge && c >= layout.first_free_col && c <= layout.last_free_col) {
          // Straight-line guesses that start inside an obstacle's clearance
          // are pushed radially out; a point dead on the center moves to the
          // right of the travel direction. Keeps the guess in a feasible
          // homotopy class deterministically.
          for (const auto& obs : cfg.obstacles) {
            const double reach = 1.05 * (obs.radius + base_clear);
            double dx = p[0] - obs.center[0], dy = p[1] - obs.center[1];
            const double dist = std::hypot(dx, dy);
            if (dist >= reach) continue;
            if (dist < 1e-9) {
              const double tx = v.pf[0] - v.p0[0], ty = v.pf[1] - v.p0[1];
              const double tn = std::max(std::hypot(tx, ty), 1e-9);
              dx = ty / tn;
              dy = -tx / tn;
            } else {
              dx /= dist;
              dy /= dist;
            }
            p[0] = obs.center[0] + dx * reach;
            p[1] = obs.center[1] + dy * reach;
          }
        }
        for (int d = 0; d < layout.dims; ++d) ref[veh](d, c) = p[d];
      }
      if (cfg.kind == ScenarioKind::SwarmDecentralized) {
        int idx = layout.offset(veh);
        for (int c = layout.first_free_col; c <= layout.last_free_col; ++c)
          for (int d = 0; d < layout.dims; ++d)
            guess[idx++] = 0.1 * std::max(cfg.d_s, 1e-3) / len_scale[veh] *
                           std::sin(1.0 + 2.3 * decentral_index + 0.7 * c + 1.9 * d);
      }
      if (layout.free_tf) guess[layout.tf_index(veh)] = 1.0;
    }
  }

  double tf_of(const std::vector<double>& x, int veh) const {
    if (!layout.free_tf) return cfg.tf;
    return std::max(x[layout.tf_index(veh)] * tf_scale[veh], kTfDecodeFloor);
  }

  BernsteinPoly decode_vehicle(const std::vector<double>& x, int veh) const {
    const VehicleSpec& v = cfg.vehicles[veh];
    const double tf = tf_of(x, veh);
    const int n = layout.n;
    Mat m(layout.dims, n + 1);
    for (int d = 0; d < layout.dims; ++d) {
      m(d, 0) = v.p0[d];
      m(d, n) = v.pf[d];
    }
    if (layout.headings) {
      // Endpoint heading and speed pin the adjacent control points via the
      // endpoint-derivative closed form, recomputed from the current tf.
      m(0, 1) = v.p0[0] + tf * v.v0 / n * std::cos(v.psi0);
      m(1, 1) = v.p0[1] + tf * v.v0 / n * std::sin(v.psi0);
      m(0, n - 1) = v.pf[0] - tf * v.vf / n * std::cos(v.psif);
      m(1, n - 1) = v.pf[1] - tf * v.vf / n * std::sin(v.psif);
    }
    int idx = layout.offset(veh);
    for (int c = layout.first_free_col; c <= layout.last_free_col; ++c)
      for (int d = 0; d < layout.dims; ++d)
        m(d, c) = ref[veh](d, c) + x[idx++] * len_scale[veh];
    return BernsteinPoly(std::move(m), 0.0, tf);
  }

  std::vector<BernsteinPoly> decode_all(const std::vector<double>& x) const {
    std::vector<BernsteinPoly> out;
    out.reserve(layout.m);
    for (int veh = 0; veh < layout.m; ++veh) out.push_back(decode_vehicle(x, veh));
    return out;
  }

  std::vector<double> final_times_of(const std::vector<double>& x) const {
    std::vector<double> out(layout.m);
    for (int veh = 0; veh < layout.m; ++veh) out[veh] = tf_of(x, veh);
    return out;
  }

  double arc_surrogate(const BernsteinPoly& traj) const {
    double total = 0.0;
    for (int c = 0; c + 1 <= traj.degree(); ++c) {
      double s = kArcSmooth;
      for (int d = 0; d < traj.dimension(); ++d) {
        const double diff = traj.coeffs()(d, c + 1) - traj.coeffs()(d, c);
        s += diff * diff;
      }
      total += std::sqrt(s);
    }
    return total;
  }

  void append(std::vector<double>& out, std::vector<double> vals, double scale) const {
    for (double v : vals) out.push_back(v / scale);
  }

  NlpProblem::Eval evaluate(const std::vector<double>& x) const {
    NlpProblem::Eval e;
    const std::vector<BernsteinPoly> trajs = decode_all(x);

    switch (cfg.kind) {
      case ScenarioKind::Dubins:
      case ScenarioKind::Atc: {
        double total = 0.0;
        for (int veh = 0; veh < layout.m; ++veh)
          total += x[layout.tf_index(veh)] * tf_scale[veh];
        e.objective = total;
        break;
      }
      case ScenarioKind::Cluttered:
      case ScenarioKind::SwarmCentralized: {
        double total = 0.0;
        for (const auto& t : trajs) total += arc_surrogate(t);
        e.objective = total;
        break;
      }
      case ScenarioKind::SwarmDecentralized: {
        if (cfg.swarm_cost == SwarmCost::ArcLength) {
          e.objective = arc_surrogate(trajs[0]);
        } else {
          double sum = 0.0;
          for (const auto& peer : fixed_peers) {
            const BernsteinPoly d2 = squared_distance(trajs[0], peer);
            for (double c : d2.coeffs().data()) sum += c;
          }
          e.objective = 1.0 / (kReciprocalDelta + sum);
        }
        break;
      }
    }

    const Enforcement& enf = cfg.enforcement;
    for (int veh = 0; veh < layout.m; ++veh) {
      const BernsteinPoly& traj = trajs[veh];
      if (layout.free_tf)
        e.ineq.push_back((kTfFloor - x[layout.tf_index(veh)] * tf_scale[veh]) / kTfFloor);
      if (layout.headings) {
        const BernsteinPoly ss = speed_squared(traj);
        const double vmax2 = cfg.v_max * cfg.v_max;
        const double vmax_pad2 = vmax2 * (1.0 - kBoundPad) * (1.0 - kBoundPad);
        append(e.ineq, reduce_constraint(ss, enf, ConstraintSense::UpperBound, vmax_pad2, vmax2),
               vmax2);
        if (cfg.v_min > 0.0) {
          const double vmin_pad2 =
              cfg.v_min * cfg.v_min * (1.0 + kBoundPad) * (1.0 + kBoundPad);
          append(e.ineq, reduce_constraint(ss, enf, ConstraintSense::LowerBound, vmin_pad2, vmax2),
                 vmax2);
        }
        if (cfg.omega_max > 0.0) {
          const AngularRateParts parts = angular_rate_parts(traj);
          const double w_pad = cfg.omega_max * (1.0 - kBoundPad);
          const double w_scale = cfg.omega_max * vmax2;
          const BernsteinPoly lhs_pos =
              subtract(parts.numerator, scale(parts.denominator, w_pad));
          const BernsteinPoly lhs_neg =
              subtract(scale(parts.numerator, -1.0), scale(parts.denominator, w_pad));
          append(e.ineq, reduce_constraint(lhs_pos, enf, ConstraintSense::UpperBound, 0.0, w_scale),
                 w_scale);
          append(e.ineq, reduce_constraint(lhs_neg, enf, ConstraintSense::UpperBound, 0.0, w_scale),
                 w_scale);
        }
      }
      if (cfg.kind == ScenarioKind::Dubins || cfg.kind == ScenarioKind::Cluttered) {
        const double base = cfg.kind == ScenarioKind::Dubins ? cfg.d_s : cfg.d_obs;
        for (const auto& obs : cfg.obstacles) {
          const double clear = obs.radius + base;
          if (!(clear > 0.0)) continue;
          const BernsteinPoly d2 = squared_distance(
              traj, obstacle_poly(obs.center, traj.degree(), traj.t0(), traj.tf()));
          const double c_pad = clear * (1.0 + kBoundPad);
          append(e.ineq,
                 reduce_constraint(d2, enf, ConstraintSense::LowerBound, c_pad * c_pad,
                                   clear * clear),
                 clear * clear);
        }
      }
    }

    if (cfg.d_s > 0.0) {
      const double ds2 = cfg.d_s * cfg.d_s;
      const double ds_pad = cfg.d_s * (1.0 + kBoundPad);
      if (cfg.kind == ScenarioKind::SwarmDecentralized) {
        if (cfg.swarm_cost == SwarmCost::ArcLength) {
          for (const auto& peer : fixed_peers) {
            const double T = std::min(trajs[0].tf(), peer.tf());
            const BernsteinPoly d2 =
                squared_distance(restrict_to(trajs[0], T), restrict_to(peer, T));
            append(e.ineq,
                   reduce_constraint(d2, enf, ConstraintSense::LowerBound, ds_pad * ds_pad, ds2),
                   ds2);
          }
        }
      } else if (layout.m >= 2) {
        for (int i = 0; i < layout.m; ++i)
          for (int j = i + 1; j < layout.m; ++j) {
            const double T = std::min(trajs[i].tf(), trajs[j].tf());
            const BernsteinPoly d2 =
                squared_distance(restrict_to(trajs[i], T), restrict_to(trajs[j], T));
            append(e.ineq,
                   reduce_constraint(d2, enf, ConstraintSense::LowerBound, ds_pad * ds_pad, ds2),
                   ds2);
          }
      }
    }
    return e;
  }

  std::string describe() const {
    std::ostringstream os;
    for (int veh = 0; veh < layout.m; ++veh) {
      const int off = layout.offset(veh);
      os << "vehicle " << veh << ": control columns " << layout.first_free_col << ".."
         << layout.last_free_col << " (dims interleaved) at x[" << off << ".."
         << off + layout.coeffs_per_vehicle - 1 << "]";
      if (layout.free_tf) os << ", tf at x[" << layout.tf_index(veh) << "]";
      os << "\n";
    }
    return os.str();
  }

  NlpProblem build() const {
    auto self = std::make_shared<Transcriber>(*this);
    NlpProblem p;
    p.dim = layout.total;
    p.initial_guess = guess;
    p.layout = describe();
    p.eval_all = [self](const std::vector<double>& x) { return self->evaluate(x); };
    p.decode = [self](const std::vector<double>& x) { return self->decode_all(x); };
    p.final_times = [self](const std::vector<double>& x) { return self->final_times_of(x); };
    const NlpProblem::Eval probe = p.eval_all(p.initial_guess);
    p.wire_lists_from_eval(probe.eq.size(), probe.ineq.size());
    return p;
  }
};

void require_kind(const ScenarioConfig& cfg, ScenarioKind kind, const char* what) {
  if (cfg.kind != kind)
    throw std::invalid_argument(std::string(what) + ": scenario kind mismatch");
}

}  // namespace

BernsteinPoly restrict_to(const BernsteinPoly& p, double T) {
  const double span = p.duration();
  if (T >= p.tf() - 1e-12 * span) return p;
  const double t = std::max(T, p.t0() + 1e-9 * span);
  return split(p, t).first;
}

int reduce_constraint_size(int poly_degree, const Enforcement& enf) {
  if (enf.mode == EnforcementMode::Extrema) return 1;
  return std::max(poly_degree, enf.elevate_to) + 1;
}

std::vector<double> reduce_constraint(const BernsteinPoly& poly, const Enforcement& enf,
                                      ConstraintSense sense, double c, double scale) {
  if (poly.dimension() != 1)
    throw std::domain_error("reduce_constraint: polynomial is not 1-D");
  std::vector<double> out;
  if (enf.mode == EnforcementMode::HullBounds) {
    const int target = std::max(poly.degree(), enf.elevate_to);
    const BernsteinPoly q = elevate(poly, target);
    out.reserve(target + 1);
    for (int i = 0; i <= target; ++i) {
      const double coeff = q.coeffs()(0, i);
      out.push_back(sense == ConstraintSense::UpperBound ? coeff - c : c - coeff);
    }
  } else {
    ExtremaQuery q;
    q.epsilon = enf.eps * (scale > 0.0 ? scale : std::max(1.0, std::abs(c)));
    q.conservative = true;  // enforcement must not under-report the extremum
    if (sense == ConstraintSense::UpperBound)
      out.push_back(maximum(poly, q).value - c);
    else
      out.push_back(c - minimum(poly, q).value);
  }
  return out;
}

NlpProblem transcribe(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.kind == ScenarioKind::SwarmDecentralized)
    throw std::invalid_argument(
        "transcribe: decentralized swarms are planned sequentially; use "
        "plan_swarm_decentralized");
  return Transcriber(cfg).build();
}

NlpProblem transcribe_dubins(const ScenarioConfig& cfg) {
  require_kind(cfg, ScenarioKind::Dubins, "transcribe_dubins");
  return transcribe(cfg);
}

NlpProblem transcribe_atc(const ScenarioConfig& cfg) {
  require_kind(cfg, ScenarioKind::Atc, "transcribe_atc");
  return transcribe(cfg);
}

NlpProblem transcribe_cluttered(const ScenarioConfig& cfg) {
  require_kind(cfg, ScenarioKind::Cluttered, "transcribe_cluttered");
  return transcribe(cfg);
}

NlpProblem transcribe_swarm_centralized(const ScenarioConfig& cfg) {
  require_kind(cfg, ScenarioKind::SwarmCentralized, "transcribe_swarm_centralized");
  return transcribe(cfg);
}

std::vector<SolverResult> plan_swarm_decentralized(const ScenarioConfig& cfg,
                                                   const SolverOptions& opts) {
  cfg.validate();
  require_kind(cfg, ScenarioKind::SwarmDecentralized, "plan_swarm_decentralized");
  std::vector<SolverResult> results;
  std::vector<BernsteinPoly> fixed;
  for (size_t i = 0; i < cfg.vehicles.size(); ++i) {
    ScenarioConfig sub = cfg;
    sub.vehicles = {cfg.vehicles[i]};
    Transcriber t(sub);
    t.decentral_index = static_cast<int>(i);
    t.fixed_peers = fixed;
    t.build_guess();
    SolverResult r = solve(t.build(), opts);
    // Even an infeasible trajectory is pinned for later vehicles; the caller
    // sees the per-vehicle feasible flags.
    fixed.push_back(r.trajectories.at(0));
    results.push_back(std::move(r));
  }
  return results;
}

namespace {

// Single-vehicle free-final-time problems are prone to basin traps around
// obstacles; restart from a straight guess plus lateral bulges of the
// interior control points and keep the best outcome. One restart is the
// plain transcription guess, so this can only improve on a single solve.
SolverResult solve_with_restarts(const ScenarioConfig& cfg, const SolverOptions& opts) {
  NlpProblem problem = transcribe(cfg);
  const bool restartable = cfg.vehicles.size() == 1 && cfg.dimension == 2 && cfg.free_tf;
  if (!restartable) return solve(problem, opts);

  const VehicleSpec& v = cfg.vehicles[0];
  const double dx = v.pf[0] - v.p0[0], dy = v.pf[1] - v.p0[1];
  const double len = std::max(std::hypot(dx, dy), 1e-9);
  const double nx = dy / len, ny = -dx / len;  // right of the travel direction
  const int n = cfg.degree;
  const int free_cols = n - 3;

  SolverResult best;
  bool have_best = false;
  // Bulges are fractions of the route length; the decision vector is already
  // expressed in that unit.
  for (double bulge : {0.0, 0.15, -0.15, 0.3}) {
    NlpProblem attempt = problem;
    attempt.initial_guess = problem.initial_guess;
    for (int c = 0; c < free_cols; ++c) {
      const double s = static_cast<double>(c + 2) / n;
      const double amp = bulge * std::sin(M_PI * s);
      attempt.initial_guess[2 * c + 0] += amp * nx;
      attempt.initial_guess[2 * c + 1] += amp * ny;
    }
    SolverResult r = solve(attempt, opts);
    const bool better = !have_best ||
                        (r.feasible && !best.feasible) ||
                        (r.feasible == best.feasible &&
                         (r.feasible ? r.objective < best.objective
                                     : r.max_violation < best.max_violation));
    if (better) best = std::move(r);
    have_best = true;
  }
  return best;
}

}  // namespace

SolverResult solve_two_phase(const ScenarioConfig& cfg, const SolverOptions& opts) {
  ScenarioConfig phase1 = cfg;
  phase1.enforcement.mode = EnforcementMode::HullBounds;
  if (phase1.enforcement.elevate_to <= 0) phase1.enforcement.elevate_to = 100;
  const SolverResult warm = solve_with_restarts(phase1, opts);

  ScenarioConfig phase2 = cfg;
  phase2.enforcement.mode = EnforcementMode::Extrema;
  NlpProblem p2 = transcribe(phase2);
  p2.initial_guess = warm.x;
  // Extrema reductions carry eps-scale kinks; a wider difference step keeps
  // the finite-difference gradient on the macroscopic slope.
  SolverOptions o2 = opts;
  o2.fd_step = std::max(opts.fd_step, 1e-5);
  SolverResult r = solve(p2, o2);
  r.iterations += warm.iterations;
  return r;
}

PlanOutcome plan_scenario(const ScenarioConfig& cfg, const SolverOptions& opts) {
  cfg.validate();
  PlanOutcome out;
  if (cfg.kind == ScenarioKind::SwarmDecentralized) {
    out.results = plan_swarm_decentralized(cfg, opts);
    out.feasible = true;
    for (const auto& r : out.results) {
      out.trajectories.push_back(r.trajectories.at(0));
      out.final_times.push_back(r.final_times.at(0));
      out.objective += r.objective;
      out.iterations += r.iterations;
      out.feasible = out.feasible && r.feasible;
    }
    return out;
  }
  SolverResult r = (cfg.enforcement.mode == EnforcementMode::Extrema)
                       ? solve_two_phase(cfg, opts)
                       : solve_with_restarts(cfg, opts);
  out.trajectories = r.trajectories;
  out.final_times = r.final_times;
  out.objective = r.objective;
  out.iterations = r.iterations;
  out.feasible = r.feasible;
  out.results.push_back(std::move(r));
  return out;
}

}  // namespace bernopt

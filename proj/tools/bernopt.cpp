// bernopt: evaluate, bound, and plan trajectories in Bernstein form.
//
// Exit codes: 0 success / no collision, 2 input error, 3 collision possible,
// 4 solver failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bernopt/certify.hpp"
#include "bernopt/distance.hpp"
#include "bernopt/extrema.hpp"
#include "bernopt/json_io.hpp"
#include "bernopt/kinematics.hpp"
#include "bernopt/scenario.hpp"
#include "bernopt/solver.hpp"
#include "bernopt/transcribe.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCollision = 3;
constexpr int kExitSolver = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Outputs land under a temp name first so readers never see partial files.
void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct PlanArgs {
  std::string scenario_path;
  std::string mode;
  int elevate = -1;
  double eps = -1.0;
  std::string out_dir = ".";
  int samples = 200;
  unsigned seed = 0;
  std::string solver_opts_path;
};

bernopt::SolverOptions solver_options_from_json(const std::string& text) {
  using nlohmann::json;
  const json j = json::parse(text);
  bernopt::SolverOptions o;
  o.max_outer_iters = j.value("max_outer_iters", o.max_outer_iters);
  o.max_inner_iters = j.value("max_inner_iters", o.max_inner_iters);
  o.feasibility_tol = j.value("feasibility_tol", o.feasibility_tol);
  o.step_tol = j.value("step_tol", o.step_tol);
  o.penalty_init = j.value("penalty_init", o.penalty_init);
  o.penalty_growth = j.value("penalty_growth", o.penalty_growth);
  o.fd_step = j.value("fd_step", o.fd_step);
  o.seed = j.value("seed", o.seed);
  return o;
}

std::string samples_csv(const std::vector<bernopt::BernsteinPoly>& trajs, int samples) {
  double t_max = 0.0;
  for (const auto& t : trajs) t_max = std::max(t_max, t.tf());
  std::ostringstream os;
  os << "t";
  for (size_t v = 0; v < trajs.size(); ++v) {
    os << ",veh" << v << "_x,veh" << v << "_y";
    if (trajs[v].dimension() == 3) os << ",veh" << v << "_z";
  }
  os << "\n";
  for (int k = 0; k < samples; ++k) {
    const double t = t_max * k / (samples - 1);
    os << fmt(t);
    for (const auto& traj : trajs) {
      // A vehicle past its own final time holds its last position (landed).
      const double tc = std::clamp(t, traj.t0(), traj.tf());
      for (double x : traj.value(tc)) os << "," << fmt(x);
    }
    os << "\n";
  }
  return os.str();
}

std::string constraints_csv(const std::vector<bernopt::BernsteinPoly>& trajs,
                            const bernopt::ScenarioConfig& cfg, int samples) {
  using namespace bernopt;
  const size_t m = trajs.size();
  const bool rate = cfg.omega_max > 0.0 && cfg.dimension == 2;

  std::vector<BernsteinPoly> speed, rate_num, rate_den;
  for (const auto& traj : trajs) {
    speed.push_back(speed_squared(traj));
    if (rate) {
      AngularRateParts parts = angular_rate_parts(traj);
      rate_num.push_back(parts.numerator);
      rate_den.push_back(parts.denominator);
    }
  }

  const bool obstacles = !cfg.obstacles.empty() &&
                         (cfg.kind == ScenarioKind::Dubins || cfg.kind == ScenarioKind::Cluttered);
  double t_max = 0.0;
  for (const auto& t : trajs) t_max = std::max(t_max, t.tf());

  std::ostringstream os;
  os << "t";
  for (size_t v = 0; v < m; ++v) {
    os << ",veh" << v << "_speed_sq";
    if (rate) os << ",veh" << v << "_omega_margin";
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) os << ",d2_" << i << "_" << j;
  if (obstacles)
    for (size_t v = 0; v < m; ++v)
      for (size_t o = 0; o < cfg.obstacles.size(); ++o) os << ",veh" << v << "_obs" << o << "_d2";
  os << "\n";

  for (int k = 0; k < samples; ++k) {
    const double t = t_max * k / (samples - 1);
    os << fmt(t);
    for (size_t v = 0; v < m; ++v) {
      const double tc = std::clamp(t, trajs[v].t0(), trajs[v].tf());
      os << "," << fmt(speed[v].value1(tc));
      if (rate) {
        const double num = rate_num[v].value1(tc);
        const double den = rate_den[v].value1(tc);
        os << "," << fmt(cfg.omega_max * den - std::abs(num));
      }
    }
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        const double tc = std::min({t, trajs[i].tf(), trajs[j].tf()});
        double s = 0.0;
        const auto a = trajs[i].value(std::max(tc, trajs[i].t0()));
        const auto b = trajs[j].value(std::max(tc, trajs[j].t0()));
        for (size_t d = 0; d < a.size(); ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
        os << "," << fmt(s);
      }
    if (obstacles)
      for (size_t v = 0; v < m; ++v) {
        const double tc = std::clamp(t, trajs[v].t0(), trajs[v].tf());
        const auto p = trajs[v].value(tc);
        for (const auto& obs : cfg.obstacles) {
          double s = 0.0;
          for (size_t d = 0; d < p.size(); ++d)
            s += (p[d] - obs.center[d]) * (p[d] - obs.center[d]);
          os << "," << fmt(s);
        }
      }
    os << "\n";
  }
  return os.str();
}

int run_plan(const PlanArgs& args) {
  using namespace bernopt;
  using nlohmann::json;

  const std::string raw = read_file(args.scenario_path);
  ScenarioConfig cfg = scenario_from_json(raw);

  // Demo fixtures may ask for a seeded shuffle of the final positions.
  const json raw_json = json::parse(raw);
  if (raw_json.value("shuffle_finals", false)) {
    std::vector<std::vector<double>> finals;
    for (const auto& v : cfg.vehicles) finals.push_back(v.pf);
    std::mt19937 gen(args.seed);
    std::shuffle(finals.begin(), finals.end(), gen);
    for (size_t i = 0; i < cfg.vehicles.size(); ++i) cfg.vehicles[i].pf = finals[i];
  }

  if (args.mode == "hull") cfg.enforcement.mode = EnforcementMode::HullBounds;
  else if (args.mode == "extrema") cfg.enforcement.mode = EnforcementMode::Extrema;
  else if (!args.mode.empty()) throw std::runtime_error("unknown mode " + args.mode);
  if (args.elevate >= 0) cfg.enforcement.elevate_to = args.elevate;
  if (args.eps > 0.0) cfg.enforcement.eps = args.eps;
  cfg.validate();

  SolverOptions opts;
  if (!args.solver_opts_path.empty())
    opts = solver_options_from_json(read_file(args.solver_opts_path));
  opts.seed = args.seed;

  const PlanOutcome outcome = plan_scenario(cfg, opts);
  const CertReport cert = certify_trajectories(outcome.trajectories, cfg, 1e-3);

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path out(args.out_dir);

  json tj;
  tj["kind"] = to_string(cfg.kind);
  tj["final_times"] = outcome.final_times;
  tj["trajectories"] = json::array();
  for (const auto& t : outcome.trajectories)
    tj["trajectories"].push_back(json::parse(to_json(t)));
  write_atomic(out / "trajectories.json", tj.dump(2));

  write_atomic(out / "samples.csv", samples_csv(outcome.trajectories, args.samples));
  write_atomic(out / "constraints.csv", constraints_csv(outcome.trajectories, cfg, args.samples));

  // Certification is the authoritative verdict; the solver flag tracks the
  // padded transcription and is reported alongside.
  const bool ok = cert.feasible;
  json rep;
  rep["objective"] = outcome.objective;
  rep["tf"] = outcome.final_times;
  rep["feasible"] = ok;
  rep["solver_feasible"] = outcome.feasible;
  rep["iterations"] = outcome.iterations;
  rep["mode"] = to_string(cfg.enforcement.mode);
  rep["elevate"] = cfg.enforcement.elevate_to;
  rep["eps"] = cfg.enforcement.eps;
  rep["seed"] = args.seed;
  rep["certification"] = json::parse(to_json(cert));
  if (!ok) rep["note"] = "solver failed to produce a certified-feasible plan";
  write_atomic(out / "report.json", rep.dump(2));

  if (!ok) {
    std::cerr << "plan: not certified feasible (see report.json)\n";
    return kExitSolver;
  }
  std::cout << "plan: feasible, objective " << fmt12(outcome.objective) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory toolkit for Bernstein-form curves"};
  app.require_subcommand(1);

  std::string poly_path, a_path, b_path;
  double t_eval = 0.0;
  double eps_extrema = 1e-6, eps_dist = 1e-4;
  bool conservative = false;
  int max_iter = 32;
  PlanArgs plan_args;

  CLI::App* eval = app.add_subcommand("eval", "evaluate a curve at a time");
  eval->add_option("--poly", poly_path, "curve JSON file")->required();
  eval->add_option("--t", t_eval, "time to evaluate at")->required();

  CLI::App* extrema = app.add_subcommand("extrema", "min and max of a 1-D curve");
  extrema->add_option("--poly", poly_path, "curve JSON file")->required();
  extrema->add_option("--eps", eps_extrema, "tolerance");
  extrema->add_flag("--conservative", conservative, "return hull-side bounds");

  CLI::App* mindist = app.add_subcommand("mindist", "minimum distance between curves/shapes");
  mindist->add_option("--a", a_path, "curve JSON file")->required();
  mindist->add_option("--b", b_path, "curve or point-set JSON file")->required();
  mindist->add_option("--eps", eps_dist, "tolerance");

  CLI::App* collide = app.add_subcommand("collide", "conservative collision check");
  collide->add_option("--a", a_path, "curve JSON file")->required();
  collide->add_option("--b", b_path, "curve JSON file")->required();
  collide->add_option("--max-iter", max_iter, "subdivision rounds");

  CLI::App* plan = app.add_subcommand("plan", "solve a scenario and emit data files");
  plan->add_option("--scenario", plan_args.scenario_path, "scenario JSON file")->required();
  plan->add_option("--mode", plan_args.mode, "hull|extrema (overrides the scenario)");
  plan->add_option("--elevate", plan_args.elevate, "hull elevation degree");
  plan->add_option("--eps", plan_args.eps, "extrema tolerance");
  plan->add_option("--out", plan_args.out_dir, "output directory");
  plan->add_option("--samples", plan_args.samples, "samples per emitted trace")
      ->check(CLI::Range(2, 1000000));
  plan->add_option("--seed", plan_args.seed, "seed for stochastic fixture choices");
  plan->add_option("--solver-opts", plan_args.solver_opts_path, "solver options JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (eval->parsed()) {
      const bernopt::BernsteinPoly p = bernopt::poly_from_json(read_file(poly_path));
      const auto v = p.value(t_eval);
      for (size_t i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << fmt12(v[i]);
      std::cout << "\n";
      return kExitOk;
    }
    if (extrema->parsed()) {
      const bernopt::BernsteinPoly p = bernopt::poly_from_json(read_file(poly_path));
      bernopt::ExtremaQuery q;
      q.epsilon = eps_extrema;
      q.conservative = conservative;
      std::cout << fmt12(bernopt::minimum(p, q).value) << ","
                << fmt12(bernopt::maximum(p, q).value) << "\n";
      return kExitOk;
    }
    if (mindist->parsed()) {
      const bernopt::BernsteinPoly a = bernopt::poly_from_json(read_file(a_path));
      const std::string b_text = read_file(b_path);
      bernopt::DistanceQuery q;
      q.epsilon = eps_dist;
      double d = 0.0;
      if (bernopt::classify_geometry_json(b_text) == bernopt::GeometryKind::PointSet)
        d = bernopt::min_distance_to_shape(a, bernopt::point_set_from_json(b_text), q).distance;
      else
        d = bernopt::min_distance(a, bernopt::poly_from_json(b_text), q).distance;
      std::cout << fmt12(d) << "\n";
      return kExitOk;
    }
    if (collide->parsed()) {
      const bernopt::BernsteinPoly a = bernopt::poly_from_json(read_file(a_path));
      const bernopt::BernsteinPoly b = bernopt::poly_from_json(read_file(b_path));
      if (bernopt::collision_check(a, b, max_iter) == bernopt::CollisionVerdict::NoCollision) {
        std::cout << "no collision\n";
        return kExitOk;
      }
      std::cout << "collision possible\n";
      return kExitCollision;
    }
    if (plan->parsed()) return run_plan(plan_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

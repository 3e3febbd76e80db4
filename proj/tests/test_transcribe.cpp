#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bernopt/certify.hpp"
#include "bernopt/extrema.hpp"
#include "bernopt/kinematics.hpp"
#include "bernopt/scenario.hpp"
#include "bernopt/transcribe.hpp"

using namespace bernopt;

namespace {

ScenarioConfig dubins_config() {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::Dubins;
  cfg.dimension = 2;
  cfg.degree = 10;
  cfg.free_tf = true;
  cfg.v_max = 5.0;
  cfg.omega_max = 1.0;
  cfg.d_s = 1.5;
  cfg.vehicles = {{{3.0, 0.0}, {7.0, 10.0}, M_PI_2, M_PI_2, 1.0, 1.0}};
  cfg.obstacles = {{{3.0, 4.0}, 0.0}, {{6.0, 7.0}, 0.0}};
  return cfg;
}

ScenarioConfig swarm_config(int m, ScenarioKind kind) {
  ScenarioConfig cfg;
  cfg.kind = kind;
  cfg.dimension = 3;
  cfg.degree = 5;
  cfg.tf = 20.0;
  cfg.d_s = 2.0;
  std::mt19937 gen(55);
  std::uniform_real_distribution<double> u(0.0, 25.0);
  for (int i = 0; i < m; ++i) {
    VehicleSpec v;
    v.p0 = {u(gen), u(gen), 0.0};
    v.pf = {u(gen), u(gen), 100.0};
    cfg.vehicles.push_back(v);
  }
  return cfg;
}

BernsteinPoly poly1d(std::vector<double> c) {
  Mat m(1, static_cast<int>(c.size()));
  for (size_t i = 0; i < c.size(); ++i) m(0, i) = c[i];
  return BernsteinPoly(std::move(m), 0.0, 1.0);
}

}  // namespace

TEST_CASE("scenario json round trip") {
  const ScenarioConfig cfg = dubins_config();
  const ScenarioConfig back = scenario_from_json(to_json(cfg));
  CHECK(back.kind == cfg.kind);
  CHECK(back.degree == cfg.degree);
  CHECK(back.free_tf);
  CHECK(back.v_max == cfg.v_max);
  CHECK(back.vehicles.size() == 1);
  CHECK(back.obstacles.size() == 2);
  CHECK(back.vehicles[0].psi0 == doctest::Approx(M_PI_2));
}

TEST_CASE("scenario validation") {
  ScenarioConfig cfg = dubins_config();
  cfg.degree = 2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = dubins_config();
  cfg.v_max = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = dubins_config();
  cfg.vehicles[0].pf = cfg.vehicles[0].p0;  // zero-length flight with v0 > 0
  CHECK_THROWS_AS(transcribe(cfg), std::invalid_argument);
}

TEST_CASE("reduce_constraint hull and extrema") {
  Enforcement hull{EnforcementMode::HullBounds, 0, 1e-6};
  Enforcement hull100{EnforcementMode::HullBounds, 100, 1e-6};
  Enforcement extrema{EnforcementMode::Extrema, 0, 1e-6};

  BernsteinPoly konst = BernsteinPoly::constant({3.0}, 4, 0.0, 1.0);
  for (double g : reduce_constraint(konst, hull, ConstraintSense::UpperBound, 5.0))
    CHECK(g <= 0.0);
  for (double g : reduce_constraint(konst, extrema, ConstraintSense::UpperBound, 5.0))
    CHECK(g <= 0.0);

  CHECK(reduce_constraint(konst, hull100, ConstraintSense::UpperBound, 5.0).size() == 101);
  CHECK(reduce_constraint(konst, extrema, ConstraintSense::UpperBound, 5.0).size() == 1);
  CHECK(reduce_constraint_size(4, hull) == 5);
  CHECK(reduce_constraint_size(4, hull100) == 101);
  CHECK(reduce_constraint_size(4, extrema) == 1);
}

TEST_CASE("hull reduction is more conservative than extrema reduction") {
  std::mt19937 gen(59);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Enforcement extrema{EnforcementMode::Extrema, 0, 1e-6};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> c(9);
    for (double& v : c) v = u(gen);
    BernsteinPoly p = poly1d(c);
    for (int elev : {0, 30}) {
      Enforcement hull{EnforcementMode::HullBounds, elev, 1e-6};
      const double bound = u(gen);
      auto hull_vals = reduce_constraint(p, hull, ConstraintSense::UpperBound, bound);
      auto ext_vals = reduce_constraint(p, extrema, ConstraintSense::UpperBound, bound);
      const double hull_worst = *std::max_element(hull_vals.begin(), hull_vals.end());
      // Hull satisfied implies extrema satisfied (up to the extrema tolerance).
      CHECK(ext_vals[0] <= hull_worst + 1e-6);
    }
  }
}

TEST_CASE("dubins transcription layout") {
  const ScenarioConfig cfg = dubins_config();
  const NlpProblem p = transcribe_dubins(cfg);
  CHECK(p.dim == 2 * 11 - 8 + 1);  // 15 decision variables
  CHECK(p.initial_guess.size() == 15);
  CHECK(p.eq.empty());
  CHECK_FALSE(p.ineq.empty());
  CHECK(p.layout.find("tf") != std::string::npos);
  CHECK(p.layout.find("vehicle 0") != std::string::npos);

  // Decoded trajectories satisfy the endpoint conditions exactly, for any x.
  std::mt19937 gen(61);
  std::uniform_real_distribution<double> u(-5.0, 15.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(15);
    for (double& v : x) v = u(gen);
    x[14] = std::abs(x[14]) + 1.0;  // plausible tf
    const BernsteinPoly traj = p.decode(x)[0];
    const auto start = traj.value(traj.t0());
    const auto stop = traj.value(traj.tf());
    CHECK(start[0] == doctest::Approx(3.0));
    CHECK(start[1] == doctest::Approx(0.0));
    CHECK(stop[0] == doctest::Approx(7.0));
    CHECK(stop[1] == doctest::Approx(10.0));
    auto [d0, df] = end_derivatives(traj);
    CHECK(std::hypot(d0[0], d0[1]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::atan2(d0[1], d0[0]) == doctest::Approx(M_PI_2).epsilon(1e-9));
    CHECK(std::hypot(df[0], df[1]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::atan2(df[1], df[0]) == doctest::Approx(M_PI_2).epsilon(1e-9));
  }

  // No obstacles: the obstacle constraints disappear.
  ScenarioConfig bare = cfg;
  bare.obstacles.clear();
  CHECK(transcribe(bare).ineq.size() < p.ineq.size());
}

TEST_CASE("atc transcription structure") {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::Atc;
  cfg.dimension = 2;
  cfg.degree = 5;
  cfg.free_tf = true;
  cfg.v_min = 200.0;
  cfg.v_max = 260.0;
  cfg.omega_max = 0.0524;
  cfg.d_s = 5000.0;
  for (int i = 0; i < 4; ++i) {
    VehicleSpec v;
    v.p0 = {i * 2.0e5, 0.0};
    v.pf = {i * 2.0e5, 1.0e6};
    v.psi0 = M_PI_2;
    v.psif = M_PI_2;
    v.v0 = 205.0;
    v.vf = 205.0;
    cfg.vehicles.push_back(v);
  }
  const NlpProblem p = transcribe_atc(cfg);
  CHECK(p.dim == 4 * (2 * 2 + 1));

  // Pair separation blocks: 4 choose 2.
  const Enforcement enf = cfg.enforcement;
  const int per_pair = reduce_constraint_size(2 * cfg.degree, enf);
  ScenarioConfig solo = cfg;
  solo.vehicles.resize(1);
  const NlpProblem p1 = transcribe_atc(solo);
  const size_t per_vehicle = p1.ineq.size();
  CHECK(p.ineq.size() == 4 * per_vehicle + 6 * per_pair);
}

TEST_CASE("cluttered transcription structure") {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::Cluttered;
  cfg.dimension = 2;
  cfg.degree = 7;
  cfg.tf = 30.0;
  cfg.v_max = 10.0;
  cfg.d_s = 1.0;
  cfg.d_obs = 2.0;
  cfg.vehicles = {{{0.0, 0.0}, {20.0, 30.0}, M_PI_2, M_PI_2, 1.0, 1.0},
                  {{10.0, 0.0}, {0.0, 30.0}, M_PI_2, M_PI_2, 1.0, 1.0},
                  {{20.0, 0.0}, {10.0, 30.0}, M_PI_2, M_PI_2, 1.0, 1.0}};
  cfg.obstacles = {{{6.0, 9.0}, 1.0}, {{14.0, 20.0}, 1.0}};
  const NlpProblem p = transcribe_cluttered(cfg);
  CHECK(p.dim == 3 * 2 * 4);

  // Obstacle constraint blocks: vehicles x obstacles.
  const int per_d2 = reduce_constraint_size(2 * cfg.degree, cfg.enforcement);
  const int per_speed = reduce_constraint_size(2 * (cfg.degree - 1), cfg.enforcement);
  const size_t expected = 3u * (per_speed + 2 * per_d2) + 3u * per_d2;
  CHECK(p.ineq.size() == expected);

  // A straight unobstructed single vehicle: optimal surrogate cost is the
  // straight-line length.
  ScenarioConfig solo = cfg;
  solo.vehicles = {{{0.0, 0.0}, {0.0, 30.0}, M_PI_2, M_PI_2, 1.0, 1.0}};
  solo.obstacles.clear();
  solo.d_s = 0.0;
  const NlpProblem sp = transcribe_cluttered(solo);
  const double cost0 = sp.objective(sp.initial_guess);
  CHECK(cost0 == doctest::Approx(30.0).epsilon(1e-6));
  const SolverResult r = solve(sp);
  CHECK(r.feasible);
  CHECK(r.objective <= 30.0 + 1e-6);
}

TEST_CASE("swarm centralized layout and small solve") {
  ScenarioConfig cfg = swarm_config(3, ScenarioKind::SwarmCentralized);
  const NlpProblem p = transcribe_swarm_centralized(cfg);
  CHECK(p.dim == 3 * (cfg.degree - 1) * 3);

  ScenarioConfig solo = swarm_config(1, ScenarioKind::SwarmCentralized);
  const NlpProblem p1 = transcribe_swarm_centralized(solo);
  CHECK(p1.ineq.empty());  // no separation constraints for one vehicle
  const SolverResult r = solve(p1);
  const double straight = [&] {
    double s = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double diff = solo.vehicles[0].pf[d] - solo.vehicles[0].p0[d];
      s += diff * diff;
    }
    return std::sqrt(s);
  }();
  CHECK(r.objective == doctest::Approx(straight).epsilon(1e-6));
}

TEST_CASE("decentralized swarm constraint growth and far-apart corridors") {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::SwarmDecentralized;
  cfg.dimension = 3;
  cfg.degree = 5;
  cfg.tf = 10.0;
  cfg.d_s = 1.0;
  cfg.vehicles = {{{0.0, 0.0, 0.0}, {0.0, 0.0, 50.0}, 0, 0, 0, 0},
                  {{100.0, 0.0, 0.0}, {100.0, 0.0, 50.0}, 0, 0, 0, 0}};
  const auto results = plan_swarm_decentralized(cfg);
  REQUIRE(results.size() == 2);
  CHECK(results[0].feasible);
  CHECK(results[1].feasible);
  // Far-apart corridors stay straight: surrogate length equals the gap.
  CHECK(results[0].objective == doctest::Approx(50.0).epsilon(1e-4));
  CHECK(results[1].objective == doctest::Approx(50.0).epsilon(1e-4));
}

TEST_CASE("certify flags violations and passes easy cases") {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::Cluttered;
  cfg.dimension = 2;
  cfg.degree = 4;
  cfg.tf = 10.0;
  cfg.v_max = 10.0;
  cfg.d_s = 0.0;
  cfg.vehicles = {{{0.0, 0.0}, {0.0, 5.0}, M_PI_2, M_PI_2, 0.5, 0.5}};

  // A gentle straight climb: generous limits hold.
  Mat easy(2, 5);
  for (int c = 0; c <= 4; ++c) {
    easy(0, c) = 0.0;
    easy(1, c) = 5.0 * c / 4.0;
  }
  const CertReport ok = certify_trajectories({BernsteinPoly(easy, 0.0, 10.0)}, cfg);
  CHECK(ok.feasible);
  for (const auto& e : ok.entries) CHECK(e.scaled >= -ok.tolerance);

  // Same path flown in half a second: speed limit breaks.
  const CertReport bad = certify_trajectories({BernsteinPoly(easy, 0.0, 0.25)}, cfg);
  CHECK_FALSE(bad.feasible);
  bool speed_flagged = false;
  for (const auto& v : bad.violations) speed_flagged |= v.find("max speed") != std::string::npos;
  CHECK(speed_flagged);
}

TEST_CASE("two-phase extrema certification on a tiny dubins instance") {
  ScenarioConfig cfg = dubins_config();
  cfg.degree = 6;  // keep the unit test quick
  SolverOptions opts;
  opts.max_outer_iters = 25;
  const PlanOutcome out = plan_scenario([&] {
    ScenarioConfig c = cfg;
    c.enforcement.mode = EnforcementMode::Extrema;
    c.enforcement.eps = 1e-4;
    return c;
  }(), opts);
  REQUIRE(out.trajectories.size() == 1);
  CHECK(out.feasible);
  const CertReport rep = certify_trajectories(out.trajectories, cfg, 1e-3);
  CHECK(rep.feasible);
}

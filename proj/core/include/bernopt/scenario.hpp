#pragma once

#include <string>
#include <vector>

namespace bernopt {

enum class ScenarioKind { Dubins, Atc, Cluttered, SwarmCentralized, SwarmDecentralized };

enum class EnforcementMode { HullBounds, Extrema };

/// How continuous-time polynomial constraints are reduced to scalars:
/// hull bounds on (optionally elevated) coefficients, or branch-and-bound
/// extrema at tolerance eps.
struct Enforcement {
  EnforcementMode mode = EnforcementMode::HullBounds;
  int elevate_to = 0;  // 0 = natural degree
  double eps = 1e-6;
};

enum class SwarmCost { ArcLength, ReciprocalSeparation };

struct VehicleSpec {
  std::vector<double> p0;  // initial position, m
  std::vector<double> pf;  // final position, m
  double psi0 = 0.0;       // initial heading, rad (2-D scenarios)
  double psif = 0.0;
  double v0 = 0.0;         // endpoint speeds, m/s
  double vf = 0.0;
};

struct Obstacle {
  std::vector<double> center;
  double radius = 0.0;
};

/// Declarative description of one trajectory-generation problem instance.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Dubins;
  int dimension = 2;
  int degree = 5;
  bool free_tf = false;
  double tf = 0.0;  // fixed final time when free_tf is false

  double v_min = 0.0;
  double v_max = 0.0;
  double omega_max = 0.0;
  double d_s = 0.0;    // min vehicle-vehicle separation, m
  double d_obs = 0.0;  // min vehicle-obstacle clearance, m

  std::vector<VehicleSpec> vehicles;
  std::vector<Obstacle> obstacles;

  Enforcement enforcement;
  SwarmCost swarm_cost = SwarmCost::ArcLength;

  void validate() const;  // throws std::invalid_argument on bad configs
};

ScenarioConfig scenario_from_json(const std::string& text);
std::string to_json(const ScenarioConfig& cfg);

std::string to_string(ScenarioKind kind);
std::string to_string(EnforcementMode mode);

}  // namespace bernopt

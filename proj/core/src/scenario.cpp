#include "bernopt/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace bernopt {

namespace {

using nlohmann::json;

ScenarioKind kind_from_string(const std::string& s) {
  if (s == "dubins") return ScenarioKind::Dubins;
  if (s == "atc") return ScenarioKind::Atc;
  if (s == "cluttered") return ScenarioKind::Cluttered;
  if (s == "swarm_centralized") return ScenarioKind::SwarmCentralized;
  if (s == "swarm_decentralized") return ScenarioKind::SwarmDecentralized;
  throw std::invalid_argument("unknown scenario kind: " + s);
}

bool needs_headings(ScenarioKind kind) {
  return kind == ScenarioKind::Dubins || kind == ScenarioKind::Atc ||
         kind == ScenarioKind::Cluttered;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Dubins: return "dubins";
    case ScenarioKind::Atc: return "atc";
    case ScenarioKind::Cluttered: return "cluttered";
    case ScenarioKind::SwarmCentralized: return "swarm_centralized";
    case ScenarioKind::SwarmDecentralized: return "swarm_decentralized";
  }
  return "?";
}

std::string to_string(EnforcementMode mode) {
  return mode == EnforcementMode::HullBounds ? "hull" : "extrema";
}

void ScenarioConfig::validate() const {
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("scenario: dimension must be 2 or 3");
  if (vehicles.empty()) throw std::invalid_argument("scenario: no vehicles");
  if (degree < 1) throw std::invalid_argument("scenario: degree must be >= 1");
  if (!free_tf && !(tf > 0.0))
    throw std::invalid_argument("scenario: fixed tf must be positive");
  if (needs_headings(kind)) {
    if (dimension != 2)
      throw std::invalid_argument("scenario: heading-constrained scenarios are 2-D");
    if (degree < 3)
      throw std::invalid_argument(
          "scenario: degree must be >= 3 for heading/speed endpoint constraints");
    if (!(v_max > v_min) || v_min < 0.0)
      throw std::invalid_argument("scenario: requires v_max > v_min >= 0");
  }
  if (free_tf && (kind == ScenarioKind::Cluttered || kind == ScenarioKind::SwarmCentralized ||
                  kind == ScenarioKind::SwarmDecentralized))
    throw std::invalid_argument("scenario: free final time only in time-optimal scenarios");
  if (d_s < 0.0 || d_obs < 0.0)
    throw std::invalid_argument("scenario: safety distances must be >= 0");
  for (const auto& v : vehicles) {
    if (static_cast<int>(v.p0.size()) != dimension ||
        static_cast<int>(v.pf.size()) != dimension)
      throw std::invalid_argument("scenario: vehicle endpoint dimension mismatch");
    for (double x : v.p0)
      if (!std::isfinite(x)) throw std::invalid_argument("scenario: non-finite endpoint");
    for (double x : v.pf)
      if (!std::isfinite(x)) throw std::invalid_argument("scenario: non-finite endpoint");
  }
  for (const auto& o : obstacles) {
    if (static_cast<int>(o.center.size()) != dimension)
      throw std::invalid_argument("scenario: obstacle dimension mismatch");
    if (o.radius < 0.0) throw std::invalid_argument("scenario: negative obstacle radius");
  }
  if (enforcement.mode == EnforcementMode::HullBounds && enforcement.elevate_to < 0)
    throw std::invalid_argument("scenario: elevate_to must be >= 0");
  if (enforcement.mode == EnforcementMode::Extrema && !(enforcement.eps > 0.0))
    throw std::invalid_argument("scenario: extrema eps must be positive");
}

ScenarioConfig scenario_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("scenario: invalid JSON");

  ScenarioConfig cfg;
  cfg.kind = kind_from_string(j.at("kind").get<std::string>());
  cfg.dimension = j.value("dimension", 2);
  cfg.degree = j.at("degree").get<int>();
  if (j.contains("tf")) {
    cfg.tf = j.at("tf").get<double>();
    cfg.free_tf = false;
  }
  if (j.value("free_tf", false)) cfg.free_tf = true;

  if (j.contains("limits")) {
    const auto& lim = j.at("limits");
    cfg.v_min = lim.value("v_min", 0.0);
    cfg.v_max = lim.value("v_max", 0.0);
    cfg.omega_max = lim.value("omega_max", 0.0);
  }
  if (j.contains("safety")) {
    const auto& s = j.at("safety");
    cfg.d_s = s.value("d_s", 0.0);
    cfg.d_obs = s.value("d_obs", 0.0);
  }
  for (const auto& vj : j.at("vehicles")) {
    VehicleSpec v;
    v.p0 = vj.at("p0").get<std::vector<double>>();
    v.pf = vj.at("pf").get<std::vector<double>>();
    v.psi0 = vj.value("psi0", 0.0);
    v.psif = vj.value("psif", 0.0);
    v.v0 = vj.value("v0", 0.0);
    v.vf = vj.value("vf", 0.0);
    cfg.vehicles.push_back(std::move(v));
  }
  if (j.contains("obstacles")) {
    for (const auto& oj : j.at("obstacles")) {
      Obstacle o;
      o.center = oj.at("center").get<std::vector<double>>();
      o.radius = oj.value("radius", 0.0);
      cfg.obstacles.push_back(std::move(o));
    }
  }
  if (j.contains("enforcement")) {
    const auto& ej = j.at("enforcement");
    const std::string mode = ej.value("mode", "hull");
    if (mode == "hull") cfg.enforcement.mode = EnforcementMode::HullBounds;
    else if (mode == "extrema") cfg.enforcement.mode = EnforcementMode::Extrema;
    else throw std::invalid_argument("scenario: unknown enforcement mode " + mode);
    cfg.enforcement.elevate_to = ej.value("elevate_to", 0);
    cfg.enforcement.eps = ej.value("eps", 1e-6);
  }
  if (j.contains("cost")) {
    const std::string c = j.at("cost").get<std::string>();
    if (c == "arc_length") cfg.swarm_cost = SwarmCost::ArcLength;
    else if (c == "reciprocal") cfg.swarm_cost = SwarmCost::ReciprocalSeparation;
    else throw std::invalid_argument("scenario: unknown cost " + c);
  }
  cfg.validate();
  return cfg;
}

std::string to_json(const ScenarioConfig& cfg) {
  json j;
  j["kind"] = to_string(cfg.kind);
  j["dimension"] = cfg.dimension;
  j["degree"] = cfg.degree;
  if (cfg.free_tf) j["free_tf"] = true;
  else j["tf"] = cfg.tf;
  j["limits"] = {{"v_min", cfg.v_min}, {"v_max", cfg.v_max}, {"omega_max", cfg.omega_max}};
  j["safety"] = {{"d_s", cfg.d_s}, {"d_obs", cfg.d_obs}};
  j["vehicles"] = json::array();
  for (const auto& v : cfg.vehicles)
    j["vehicles"].push_back({{"p0", v.p0},
                             {"pf", v.pf},
                             {"psi0", v.psi0},
                             {"psif", v.psif},
                             {"v0", v.v0},
                             {"vf", v.vf}});
  j["obstacles"] = json::array();
  for (const auto& o : cfg.obstacles)
    j["obstacles"].push_back({{"center", o.center}, {"radius", o.radius}});
  j["enforcement"] = {{"mode", to_string(cfg.enforcement.mode)},
                      {"elevate_to", cfg.enforcement.elevate_to},
                      {"eps", cfg.enforcement.eps}};
  j["cost"] = cfg.swarm_cost == SwarmCost::ArcLength ? "arc_length" : "reciprocal";
  return j.dump(2);
}

}  // namespace bernopt

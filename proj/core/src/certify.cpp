#include "bernopt/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bernopt/extrema.hpp"
#include "bernopt/kinematics.hpp"
#include "bernopt/transcribe.hpp"

namespace bernopt {

namespace {

bool heading_kind(ScenarioKind k) {
  return k == ScenarioKind::Dubins || k == ScenarioKind::Atc || k == ScenarioKind::Cluttered;
}

std::string veh_name(int i) {
  std::ostringstream os;
  os << "vehicle" << i;
  return os.str();
}

double point_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Conservative extrema: certified max >= true max, certified min <= true min,
// so margins never overstate feasibility.
double certified_max(const BernsteinPoly& p, double eps_abs) {
  ExtremaQuery q;
  q.epsilon = std::max(eps_abs, 1e-12);
  q.conservative = true;
  return maximum(p, q).value;
}

double certified_min(const BernsteinPoly& p, double eps_abs) {
  ExtremaQuery q;
  q.epsilon = std::max(eps_abs, 1e-12);
  q.conservative = true;
  return minimum(p, q).value;
}

}  // namespace

CertReport certify_trajectories(const std::vector<BernsteinPoly>& trajs,
                                const ScenarioConfig& cfg, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("certify: eps must be positive");
  CertReport report;
  report.tolerance = eps;
  const int m = static_cast<int>(trajs.size());
  if (m != static_cast<int>(cfg.vehicles.size()))
    throw std::invalid_argument("certify: trajectory count does not match scenario");

  auto push = [&](std::string name, double margin, double scaled) {
    report.entries.push_back({std::move(name), margin, scaled});
  };

  for (int i = 0; i < m; ++i) {
    const BernsteinPoly& traj = trajs[i];
    const VehicleSpec& v = cfg.vehicles[i];

    // Boundary conditions are built into the decoding; report them anyway.
    double ep_err = 0.0;
    const std::vector<double> a = traj.value(traj.t0());
    const std::vector<double> b = traj.value(traj.tf());
    for (int d = 0; d < traj.dimension(); ++d) {
      ep_err = std::max(ep_err, std::abs(a[d] - v.p0[d]));
      ep_err = std::max(ep_err, std::abs(b[d] - v.pf[d]));
    }
    const double span = std::max(1.0, point_dist(v.p0, v.pf));
    push(veh_name(i) + " endpoints", -ep_err, -ep_err / span);

    if (heading_kind(cfg.kind) && cfg.v_max > 0.0) {
      const BernsteinPoly ss = speed_squared(traj);
      const double vmax2 = cfg.v_max * cfg.v_max;
      const double smax = certified_max(ss, eps * vmax2);
      push(veh_name(i) + " max speed",
           cfg.v_max - std::sqrt(std::max(0.0, smax)), (vmax2 - smax) / vmax2);
      const double smin = certified_min(ss, eps * vmax2);
      if (cfg.v_min > 0.0) {
        const double vmin2 = cfg.v_min * cfg.v_min;
        push(veh_name(i) + " min speed",
             std::sqrt(std::max(0.0, smin)) - cfg.v_min, (smin - vmin2) / vmax2);
      }
      if (cfg.omega_max > 0.0) {
        // Denominator positivity first, then the cleared rate bound.
        push(veh_name(i) + " speed positivity", std::sqrt(std::max(0.0, smin)),
             smin / vmax2);
        const AngularRateParts parts = angular_rate_parts(traj);
        const double w_scale = cfg.omega_max * vmax2;
        const double w1 = certified_max(
            subtract(parts.numerator, scale(parts.denominator, cfg.omega_max)),
            eps * w_scale);
        const double w2 = certified_max(
            subtract(scale(parts.numerator, -1.0), scale(parts.denominator, cfg.omega_max)),
            eps * w_scale);
        const double worst = std::max(w1, w2);
        push(veh_name(i) + " angular rate (cleared)", -worst / w_scale, -worst / w_scale);
      }
    }

    if (cfg.kind == ScenarioKind::Dubins || cfg.kind == ScenarioKind::Cluttered) {
      const double base = cfg.kind == ScenarioKind::Dubins ? cfg.d_s : cfg.d_obs;
      for (size_t o = 0; o < cfg.obstacles.size(); ++o) {
        const double clear = cfg.obstacles[o].radius + base;
        if (!(clear > 0.0)) continue;
        const BernsteinPoly d2 = squared_distance(
            traj, obstacle_poly(cfg.obstacles[o].center, traj.degree(), traj.t0(), traj.tf()));
        const double dmin2 = certified_min(d2, eps * clear * clear);
        std::ostringstream name;
        name << veh_name(i) << " obstacle" << o << " clearance";
        push(name.str(), std::sqrt(std::max(0.0, dmin2)) - clear,
             (dmin2 - clear * clear) / (clear * clear));
      }
    }
  }

  if (cfg.d_s > 0.0 && m >= 2) {
    const double ds2 = cfg.d_s * cfg.d_s;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const double T = std::min(trajs[i].tf(), trajs[j].tf());
        const BernsteinPoly d2 =
            squared_distance(restrict_to(trajs[i], T), restrict_to(trajs[j], T));
        const double dmin2 = certified_min(d2, eps * ds2);
        std::ostringstream name;
        name << "separation " << i << "-" << j;
        push(name.str(), std::sqrt(std::max(0.0, dmin2)) - cfg.d_s, (dmin2 - ds2) / ds2);
      }
  }

  for (const auto& e : report.entries)
    if (e.scaled < -eps) {
      report.feasible = false;
      report.violations.push_back(e.name);
    }
  return report;
}

CertReport certify(const SolverResult& result, const ScenarioConfig& cfg, double eps) {
  if (result.trajectories.empty())
    throw std::invalid_argument("certify: result carries no decoded trajectories");
  return certify_trajectories(result.trajectories, cfg, eps);
}

std::string to_json(const CertReport& report) {
  nlohmann::json j;
  j["tolerance"] = report.tolerance;
  j["feasible"] = report.feasible;
  j["violations"] = report.violations;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries)
    j["entries"].push_back({{"name", e.name}, {"margin", e.margin}, {"scaled", e.scaled}});
  return j.dump(2);
}

}  // namespace bernopt

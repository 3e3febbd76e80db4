#include "bernopt/json_io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace bernopt {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("invalid JSON document");
  return j;
}

Mat coeffs_from(const json& j) {
  if (!j.contains("coeffs")) throw std::invalid_argument("missing \"coeffs\"");
  return Mat::from_rows(j.at("coeffs").get<std::vector<std::vector<double>>>());
}

json coeffs_to(const Mat& m) {
  std::vector<std::vector<double>> rows;
  rows.reserve(m.rows());
  for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return json(rows);
}

}  // namespace

std::string to_json(const BernsteinPoly& p) {
  json j{{"t0", p.t0()}, {"tf", p.tf()}, {"coeffs", coeffs_to(p.coeffs())}};
  return j.dump();
}

std::string to_json(const RationalBernsteinPoly& rp) {
  json j{{"t0", rp.t0()},
         {"tf", rp.tf()},
         {"coeffs", coeffs_to(rp.coeffs())},
         {"weights", rp.weights()}};
  return j.dump();
}

std::string to_json(const ConvexPointSet& s) {
  std::vector<std::vector<double>> pts;
  pts.reserve(s.points.size());
  for (const auto& p : s.points) {
    std::vector<double> v{p[0], p[1]};
    if (s.dim == 3) v.push_back(p[2]);
    pts.push_back(std::move(v));
  }
  return json{{"points", pts}}.dump();
}

BernsteinPoly poly_from_json(const std::string& text) {
  const json j = parse(text);
  return BernsteinPoly(coeffs_from(j), j.at("t0").get<double>(), j.at("tf").get<double>());
}

RationalBernsteinPoly rational_from_json(const std::string& text) {
  const json j = parse(text);
  return RationalBernsteinPoly(coeffs_from(j), j.at("weights").get<std::vector<double>>(),
                               j.at("t0").get<double>(), j.at("tf").get<double>());
}

ConvexPointSet point_set_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("points")) throw std::invalid_argument("missing \"points\"");
  return ConvexPointSet::from(j.at("points").get<std::vector<std::vector<double>>>());
}

GeometryKind classify_geometry_json(const std::string& text) {
  const json j = parse(text);
  if (j.contains("points")) return GeometryKind::PointSet;
  if (j.contains("coeffs")) return GeometryKind::Poly;
  throw std::invalid_argument("document is neither a curve nor a point set");
}

}  // namespace bernopt

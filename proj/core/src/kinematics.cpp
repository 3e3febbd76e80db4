#include "bernopt/kinematics.hpp"

#include <algorithm>
#include <stdexcept>

namespace bernopt {

namespace {

BernsteinPoly sum_of_squared_components(const BernsteinPoly& p) {
  BernsteinPoly first = p.component(0);
  BernsteinPoly acc = multiply(first, first);
  for (int d = 1; d < p.dimension(); ++d) {
    BernsteinPoly c = p.component(d);
    acc = add(acc, multiply(c, c));
  }
  return acc;
}

void require_2d(const BernsteinPoly& traj, const char* what) {
  if (traj.dimension() != 2)
    throw std::domain_error(std::string(what) + ": trajectory must be 2-D");
}

}  // namespace

BernsteinPoly speed_squared(const BernsteinPoly& traj) {
  if (traj.degree() < 1)
    return BernsteinPoly::zero(1, 0, traj.t0(), traj.tf());
  return sum_of_squared_components(derivative(traj));
}

BernsteinPoly accel_squared(const BernsteinPoly& traj) {
  if (traj.degree() < 2)
    return BernsteinPoly::zero(1, 0, traj.t0(), traj.tf());
  return sum_of_squared_components(derivative(derivative(traj)));
}

AngularRateParts angular_rate_parts(const BernsteinPoly& traj) {
  require_2d(traj, "angular_rate");
  if (traj.degree() < 2)
    throw std::domain_error("angular_rate: requires degree >= 2");
  const BernsteinPoly vel = derivative(traj);
  const BernsteinPoly acc = derivative(vel);
  const BernsteinPoly xd = vel.component(0), yd = vel.component(1);
  const BernsteinPoly xdd = acc.component(0), ydd = acc.component(1);

  BernsteinPoly num = subtract(multiply(xd, ydd), multiply(xdd, yd));
  BernsteinPoly den = add(multiply(xd, xd), multiply(yd, yd));
  if (num.degree() < den.degree()) num = elevate(num, den.degree());
  return {std::move(num), std::move(den)};
}

RationalBernsteinPoly heading_tangent(const BernsteinPoly& traj) {
  require_2d(traj, "heading_tangent");
  if (traj.degree() < 1)
    throw std::domain_error("heading_tangent: requires degree >= 1");
  const BernsteinPoly vel = derivative(traj);
  const BernsteinPoly xd = vel.component(0), yd = vel.component(1);
  bool all_pos = true, all_neg = true;
  for (int c = 0; c < xd.coeffs().cols(); ++c) {
    all_pos = all_pos && xd.coeffs()(0, c) > 0.0;
    all_neg = all_neg && xd.coeffs()(0, c) < 0.0;
  }
  if (!all_pos && !all_neg)
    throw std::domain_error(
        "heading_tangent: xdot coefficients change sign, so the denominator "
        "hull is not sign-definite");
  return all_pos ? divide(yd, xd) : divide(scale(yd, -1.0), scale(xd, -1.0));
}

namespace {

bool all_positive(const BernsteinPoly& p) {
  for (int c = 0; c < p.coeffs().cols(); ++c)
    if (!(p.coeffs()(0, c) > 0.0)) return false;
  return true;
}

}  // namespace

RationalBernsteinPoly angular_rate(const BernsteinPoly& traj) {
  AngularRateParts parts = angular_rate_parts(traj);
  BernsteinPoly num = parts.numerator;
  BernsteinPoly den = parts.denominator;
  // Coefficient positivity is a sufficient condition; a positive curve whose
  // coefficients touch zero becomes representable after elevating both sides
  // of the ratio (the function is unchanged, the coefficients converge).
  for (int step = 0; step < 64 && !all_positive(den); ++step) {
    num = elevate(num, num.degree() + 1);
    den = elevate(den, den.degree() + 1);
  }
  if (!all_positive(den))
    throw std::domain_error(
        "angular_rate: squared-speed coefficients must be strictly positive "
        "for the rational hull bound to hold");
  return divide(num, den);
}

BernsteinPoly squared_distance(const BernsteinPoly& a, const BernsteinPoly& b) {
  if (a.dimension() != b.dimension())
    throw std::domain_error("squared_distance: dimension mismatch");
  return sum_of_squared_components(subtract(a, b));
}

BernsteinPoly obstacle_poly(const std::vector<double>& position, int degree,
                            double t0, double tf) {
  return BernsteinPoly::constant(position, degree, t0, tf);
}

TrajectoryQuantities trajectory_quantities(const BernsteinPoly& traj) {
  return {speed_squared(traj), accel_squared(traj), heading_tangent(traj),
          angular_rate(traj)};
}

}  // namespace bernopt

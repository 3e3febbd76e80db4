#pragma once

#include <vector>

#include "bernopt/bernstein.hpp"
#include "bernopt/rational.hpp"

namespace bernopt {

/// |dC/dt|^2 as a 1-D polynomial of degree 2(n-1). Requires degree >= 1.
BernsteinPoly speed_squared(const BernsteinPoly& traj);

/// |d2C/dt2|^2; degree < 2 inputs yield the zero polynomial.
BernsteinPoly accel_squared(const BernsteinPoly& traj);

/// Numerator and denominator of the angular rate
/// (xdot*yddot - xddot*ydot) / (xdot^2 + ydot^2), degree-matched on the same
/// interval. Valid for any 2-D trajectory of degree >= 2; the ratio itself
/// only has a usable hull when the denominator coefficients are positive.
struct AngularRateParts {
  BernsteinPoly numerator;
  BernsteinPoly denominator;
};
AngularRateParts angular_rate_parts(const BernsteinPoly& traj);

/// tan(heading) = ydot/xdot as a rational polynomial. The xdot coefficients
/// must all be strictly positive or all strictly negative so the denominator
/// hull stays sign-definite.
RationalBernsteinPoly heading_tangent(const BernsteinPoly& traj);

/// Angular rate as a rational polynomial; requires strictly positive
/// squared-speed coefficients.
RationalBernsteinPoly angular_rate(const BernsteinPoly& traj);

/// |a(t) - b(t)|^2 as a 1-D polynomial; intervals and dimensions must match.
BernsteinPoly squared_distance(const BernsteinPoly& a, const BernsteinPoly& b);

/// Static obstacle as a constant curve (all control points at `position`).
BernsteinPoly obstacle_poly(const std::vector<double>& position, int degree,
                            double t0, double tf);

/// The derived motion quantities of a 2-D trajectory, all on its interval.
struct TrajectoryQuantities {
  BernsteinPoly speed_sq;
  BernsteinPoly accel_sq;
  RationalBernsteinPoly heading_tan;
  RationalBernsteinPoly ang_rate;
};
TrajectoryQuantities trajectory_quantities(const BernsteinPoly& traj);

}  // namespace bernopt

#pragma once

#include <utility>
#include <vector>

#include "bernopt/matrix.hpp"

namespace bernopt {

/// N-dimensional polynomial in Bernstein form over an interval [t0, tf].
/// Coefficient matrix: one row per spatial dimension, one column per control
/// point; degree is cols-1. Immutable value type; all operations are free
/// functions returning new values.
class BernsteinPoly {
 public:
  BernsteinPoly(Mat coeffs, double t0, double tf);

  static BernsteinPoly constant(const std::vector<double>& value, int degree,
                                double t0, double tf);
  static BernsteinPoly zero(int dims, int degree, double t0, double tf);

  int degree() const { return coeffs_.cols() - 1; }
  int dimension() const { return coeffs_.rows(); }
  double t0() const { return t0_; }
  double tf() const { return tf_; }
  double duration() const { return tf_ - t0_; }
  const Mat& coeffs() const { return coeffs_; }

  std::vector<double> control_point(int i) const { return coeffs_.col(i); }

  /// 1-D slice along dimension d, same interval.
  BernsteinPoly component(int d) const;

  /// Point on the curve at t (de Casteljau). Throws outside [t0, tf].
  std::vector<double> value(double t) const;

  /// 1-D convenience accessor; requires dimension() == 1.
  double value1(double t) const;

 private:
  Mat coeffs_;
  double t0_;
  double tf_;
};

/// Value of the i-th Bernstein basis polynomial of degree n on [t0, tf].
double basis_value(int i, int n, double t, double t0, double tf);

/// Subdivide at t_div (strictly inside the interval) into two curves of the
/// same degree covering [t0, t_div] and [t_div, tf].
std::pair<BernsteinPoly, BernsteinPoly> split(const BernsteinPoly& p, double t_div);

/// Derivative, one degree lower on the same interval. Degree 0 inputs return
/// the zero constant polynomial.
BernsteinPoly derivative(const BernsteinPoly& p);

/// Definite integral over [t0, tf], one value per dimension.
std::vector<double> integrate(const BernsteinPoly& p);

/// Degree elevation matrix E with P_m = P_n * E; shape (n+1) x (m+1),
/// cached per (n, m). Requires m >= n.
const Mat& elevation_matrix(int n, int m);

/// Same curve re-expressed at degree m >= degree().
BernsteinPoly elevate(const BernsteinPoly& p, int m);

/// Coefficient-wise sum/difference; intervals must match exactly, degrees are
/// reconciled by elevating the lower-degree operand.
BernsteinPoly add(const BernsteinPoly& a, const BernsteinPoly& b);
BernsteinPoly subtract(const BernsteinPoly& a, const BernsteinPoly& b);

/// Product of two 1-D polynomials on the same interval, degree m+n.
BernsteinPoly multiply(const BernsteinPoly& f, const BernsteinPoly& g);

/// scalar * p, and p + c (1-D shift applied to every coefficient).
BernsteinPoly scale(const BernsteinPoly& p, double s);
BernsteinPoly add_constant(const BernsteinPoly& p, double c);

/// First-derivative vectors at t0 and tf from the closed forms.
std::pair<std::vector<double>, std::vector<double>> end_derivatives(const BernsteinPoly& p);

}  // namespace bernopt

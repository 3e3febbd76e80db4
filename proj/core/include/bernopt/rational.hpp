#pragma once

#include <utility>
#include <vector>

#include "bernopt/bernstein.hpp"

namespace bernopt {

/// Rational Bernstein polynomial: weighted coefficients over a weighted
/// partition of unity. Weights must be strictly positive so the convex hull
/// of the coefficients still bounds the curve.
class RationalBernsteinPoly {
 public:
  RationalBernsteinPoly(Mat coeffs, std::vector<double> weights, double t0, double tf);

  int degree() const { return coeffs_.cols() - 1; }
  int dimension() const { return coeffs_.rows(); }
  double t0() const { return t0_; }
  double tf() const { return tf_; }
  double duration() const { return tf_ - t0_; }
  const Mat& coeffs() const { return coeffs_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Point on the curve at t via the weighted de Casteljau recursion.
  std::vector<double> value(double t) const;
  double value1(double t) const;

 private:
  Mat coeffs_;
  std::vector<double> weights_;
  double t0_;
  double tf_;
};

/// Pointwise ratio f/g of two 1-D polynomials of equal degree on the same
/// interval. Every coefficient of g must be strictly positive.
RationalBernsteinPoly divide(const BernsteinPoly& f, const BernsteinPoly& g);

std::pair<RationalBernsteinPoly, RationalBernsteinPoly> split(
    const RationalBernsteinPoly& rp, double t_div);

/// One degree-elevation step (repeat to elevate further).
RationalBernsteinPoly elevate(const RationalBernsteinPoly& rp);

std::pair<std::vector<double>, std::vector<double>> end_derivatives(
    const RationalBernsteinPoly& rp);

/// Conservative (min coeff, max coeff) bounds for a 1-D rational polynomial.
std::pair<double, double> bounds(const RationalBernsteinPoly& rp);

}  // namespace bernopt

#include "bernopt/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bernopt {

namespace {

// Homogeneous view: run plain de Casteljau / elevation on the weights and on
// the weighted coefficients w_i * P_i, then divide back. Algebraically equal
// to the weighted recursions and keeps weight positivity obvious (every new
// weight is a convex combination of positive weights).
struct Homogeneous {
  Mat num;                    // dims x (n+1), columns w_i * P_i
  std::vector<double> den;    // n+1 weights

  static Homogeneous of(const RationalBernsteinPoly& rp) {
    Homogeneous h;
    h.den = rp.weights();
    h.num = rp.coeffs();
    for (int c = 0; c < h.num.cols(); ++c)
      for (int r = 0; r < h.num.rows(); ++r) h.num(r, c) *= h.den[c];
    return h;
  }
};

}  // namespace

RationalBernsteinPoly::RationalBernsteinPoly(Mat coeffs, std::vector<double> weights,
                                             double t0, double tf)
    : coeffs_(std::move(coeffs)), weights_(std::move(weights)), t0_(t0), tf_(tf) {
  if (!(tf > t0)) throw std::domain_error("RationalBernsteinPoly: requires tf > t0");
  if (coeffs_.rows() < 1 || coeffs_.cols() < 1)
    throw std::domain_error("RationalBernsteinPoly: empty coefficients");
  if (static_cast<int>(weights_.size()) != coeffs_.cols())
    throw std::domain_error("RationalBernsteinPoly: weight count must match coefficients");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::domain_error("RationalBernsteinPoly: weights must be strictly positive");
  for (double v : coeffs_.data())
    if (!std::isfinite(v)) throw std::domain_error("RationalBernsteinPoly: non-finite coefficient");
}

std::vector<double> RationalBernsteinPoly::value(double t) const {
  if (t < t0_ || t > tf_) throw std::domain_error("evaluate: t outside [t0, tf]");
  const double lambda = (t - t0_) / (tf_ - t0_);
  const int n = degree();
  Homogeneous h = Homogeneous::of(*this);
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i <= n - j; ++i) {
      h.den[i] = (1.0 - lambda) * h.den[i] + lambda * h.den[i + 1];
      for (int r = 0; r < h.num.rows(); ++r)
        h.num(r, i) = (1.0 - lambda) * h.num(r, i) + lambda * h.num(r, i + 1);
    }
  std::vector<double> out(dimension());
  for (int r = 0; r < h.num.rows(); ++r) out[r] = h.num(r, 0) / h.den[0];
  return out;
}

double RationalBernsteinPoly::value1(double t) const {
  if (dimension() != 1) throw std::domain_error("value1: polynomial is not 1-D");
  return value(t)[0];
}

RationalBernsteinPoly divide(const BernsteinPoly& f, const BernsteinPoly& g) {
  if (f.t0() != g.t0() || f.tf() != g.tf())
    throw std::domain_error("divide: operands must share the same time interval");
  if (f.dimension() != 1 || g.dimension() != 1)
    throw std::domain_error("divide: operands must be 1-D");
  if (f.degree() != g.degree())
    throw std::domain_error("divide: operands must have equal degree");
  const int n = f.degree();
  Mat coeffs(1, n + 1);
  std::vector<double> weights(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double y = g.coeffs()(0, i);
    if (!(y > 0.0))
      throw std::domain_error(
          "divide: denominator coefficients must be strictly positive "
          "(convex hull bound would be lost)");
    coeffs(0, i) = f.coeffs()(0, i) / y;
    weights[i] = y;
  }
  return RationalBernsteinPoly(std::move(coeffs), std::move(weights), f.t0(), f.tf());
}

std::pair<RationalBernsteinPoly, RationalBernsteinPoly> split(
    const RationalBernsteinPoly& rp, double t_div) {
  if (!(t_div > rp.t0() && t_div < rp.tf()))
    throw std::domain_error("split: t_div must lie strictly inside the interval");
  const int n = rp.degree();
  const int dims = rp.dimension();
  const double lambda = (t_div - rp.t0()) / (rp.tf() - rp.t0());

  Homogeneous h = Homogeneous::of(rp);
  Mat lnum(dims, n + 1), rnum(dims, n + 1);
  std::vector<double> lden(n + 1), rden(n + 1);
  for (int r = 0; r < dims; ++r) {
    lnum(r, 0) = h.num(r, 0);
    rnum(r, n) = h.num(r, n);
  }
  lden[0] = h.den[0];
  rden[n] = h.den[n];
  for (int j = 1; j <= n; ++j) {
    for (int i = 0; i <= n - j; ++i) {
      h.den[i] = (1.0 - lambda) * h.den[i] + lambda * h.den[i + 1];
      for (int r = 0; r < dims; ++r)
        h.num(r, i) = (1.0 - lambda) * h.num(r, i) + lambda * h.num(r, i + 1);
    }
    lden[j] = h.den[0];
    rden[n - j] = h.den[n - j];
    for (int r = 0; r < dims; ++r) {
      lnum(r, j) = h.num(r, 0);
      rnum(r, n - j) = h.num(r, n - j);
    }
  }
  Mat lc(dims, n + 1), rc(dims, n + 1);
  for (int c = 0; c <= n; ++c)
    for (int r = 0; r < dims; ++r) {
      lc(r, c) = lnum(r, c) / lden[c];
      rc(r, c) = rnum(r, c) / rden[c];
    }
  return {RationalBernsteinPoly(std::move(lc), std::move(lden), rp.t0(), t_div),
          RationalBernsteinPoly(std::move(rc), std::move(rden), t_div, rp.tf())};
}

RationalBernsteinPoly elevate(const RationalBernsteinPoly& rp) {
  const int n = rp.degree();
  const int dims = rp.dimension();
  Homogeneous h = Homogeneous::of(rp);
  std::vector<double> den(n + 2);
  Mat num(dims, n + 2);
  for (int i = 0; i <= n + 1; ++i) {
    const double a = static_cast<double>(i) / (n + 1);
    const double prev_den = (i >= 1) ? h.den[i - 1] : 0.0;
    const double cur_den = (i <= n) ? h.den[i] : 0.0;
    den[i] = a * prev_den + (1.0 - a) * cur_den;
    for (int r = 0; r < dims; ++r) {
      const double prev = (i >= 1) ? h.num(r, i - 1) : 0.0;
      const double cur = (i <= n) ? h.num(r, i) : 0.0;
      num(r, i) = a * prev + (1.0 - a) * cur;
    }
  }
  Mat coeffs(dims, n + 2);
  for (int i = 0; i <= n + 1; ++i)
    for (int r = 0; r < dims; ++r) coeffs(r, i) = num(r, i) / den[i];
  // Endpoints carry over verbatim; the divide above would only add rounding.
  for (int r = 0; r < dims; ++r) {
    coeffs(r, 0) = rp.coeffs()(r, 0);
    coeffs(r, n + 1) = rp.coeffs()(r, n);
  }
  return RationalBernsteinPoly(std::move(coeffs), std::move(den), rp.t0(), rp.tf());
}

std::pair<std::vector<double>, std::vector<double>> end_derivatives(
    const RationalBernsteinPoly& rp) {
  const int n = rp.degree();
  std::vector<double> d0(rp.dimension(), 0.0), df(rp.dimension(), 0.0);
  if (n >= 1) {
    const auto& w = rp.weights();
    const double k0 = n * w[1] / (rp.duration() * w[0]);
    const double kf = n * w[n - 1] / (rp.duration() * w[n]);
    for (int d = 0; d < rp.dimension(); ++d) {
      d0[d] = k0 * (rp.coeffs()(d, 1) - rp.coeffs()(d, 0));
      df[d] = kf * (rp.coeffs()(d, n) - rp.coeffs()(d, n - 1));
    }
  }
  return {d0, df};
}

std::pair<double, double> bounds(const RationalBernsteinPoly& rp) {
  if (rp.dimension() != 1) throw std::domain_error("bounds: polynomial is not 1-D");
  double lo = rp.coeffs()(0, 0), hi = lo;
  for (int c = 0; c < rp.coeffs().cols(); ++c) {
    lo = std::min(lo, rp.coeffs()(0, c));
    hi = std::max(hi, rp.coeffs()(0, c));
  }
  return {lo, hi};
}

}  // namespace bernopt

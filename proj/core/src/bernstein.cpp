#include "bernopt/bernstein.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "bernopt/binomial.hpp"

namespace bernopt {

namespace {

void check_interval(double t0, double tf) {
  if (!(tf > t0)) throw std::domain_error("BernsteinPoly: requires tf > t0");
  if (!std::isfinite(t0) || !std::isfinite(tf))
    throw std::domain_error("BernsteinPoly: non-finite interval");
}

void check_same_interval(const BernsteinPoly& a, const BernsteinPoly& b) {
  if (a.t0() != b.t0() || a.tf() != b.tf())
    throw std::domain_error("operands must share the same time interval");
}

}  // namespace

BernsteinPoly::BernsteinPoly(Mat coeffs, double t0, double tf)
    : coeffs_(std::move(coeffs)), t0_(t0), tf_(tf) {
  check_interval(t0, tf);
  if (coeffs_.rows() < 1 || coeffs_.cols() < 1)
    throw std::domain_error("BernsteinPoly: needs at least one dimension and one coefficient");
  for (double v : coeffs_.data())
    if (!std::isfinite(v)) throw std::domain_error("BernsteinPoly: non-finite coefficient");
}

BernsteinPoly BernsteinPoly::constant(const std::vector<double>& value, int degree,
                                      double t0, double tf) {
  if (degree < 0) throw std::domain_error("constant: degree must be >= 0");
  Mat m(static_cast<int>(value.size()), degree + 1);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = value[r];
  return BernsteinPoly(std::move(m), t0, tf);
}

BernsteinPoly BernsteinPoly::zero(int dims, int degree, double t0, double tf) {
  return BernsteinPoly(Mat(dims, degree + 1, 0.0), t0, tf);
}

BernsteinPoly BernsteinPoly::component(int d) const {
  if (d < 0 || d >= dimension()) throw std::domain_error("component: dimension out of range");
  Mat m(1, coeffs_.cols());
  for (int c = 0; c < coeffs_.cols(); ++c) m(0, c) = coeffs_(d, c);
  return BernsteinPoly(std::move(m), t0_, tf_);
}

std::vector<double> BernsteinPoly::value(double t) const {
  if (t < t0_ || t > tf_) throw std::domain_error("evaluate: t outside [t0, tf]");
  const double lambda = (t - t0_) / (tf_ - t0_);
  const int n = degree();
  std::vector<double> out(dimension());
  std::vector<double> work(n + 1);
  for (int d = 0; d < dimension(); ++d) {
    for (int i = 0; i <= n; ++i) work[i] = coeffs_(d, i);
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i <= n - j; ++i)
        work[i] = (1.0 - lambda) * work[i] + lambda * work[i + 1];
    out[d] = work[0];
  }
  return out;
}

double BernsteinPoly::value1(double t) const {
  if (dimension() != 1) throw std::domain_error("value1: polynomial is not 1-D");
  return value(t)[0];
}

double basis_value(int i, int n, double t, double t0, double tf) {
  check_interval(t0, tf);
  if (n < 0 || i < 0 || i > n) throw std::domain_error("basis_value: index out of range");
  if (t < t0 || t > tf) throw std::domain_error("basis_value: t outside [t0, tf]");
  const double span = tf - t0;
  return binomial(n, i) * std::pow(t - t0, i) * std::pow(tf - t, n - i) / std::pow(span, n);
}

std::pair<BernsteinPoly, BernsteinPoly> split(const BernsteinPoly& p, double t_div) {
  if (!(t_div > p.t0() && t_div < p.tf()))
    throw std::domain_error("split: t_div must lie strictly inside the interval");
  const int n = p.degree();
  const int dims = p.dimension();
  const double lambda = (t_div - p.t0()) / (p.tf() - p.t0());
  Mat left(dims, n + 1), right(dims, n + 1);
  std::vector<double> work(n + 1);
  for (int d = 0; d < dims; ++d) {
    for (int i = 0; i <= n; ++i) work[i] = p.coeffs()(d, i);
    left(d, 0) = work[0];
    right(d, n) = work[n];
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i <= n - j; ++i)
        work[i] = (1.0 - lambda) * work[i] + lambda * work[i + 1];
      left(d, j) = work[0];
      right(d, n - j) = work[n - j];
    }
  }
  return {BernsteinPoly(std::move(left), p.t0(), t_div),
          BernsteinPoly(std::move(right), t_div, p.tf())};
}

BernsteinPoly derivative(const BernsteinPoly& p) {
  const int n = p.degree();
  if (n == 0) return BernsteinPoly::zero(p.dimension(), 0, p.t0(), p.tf());
  const double k = n / p.duration();
  Mat m(p.dimension(), n);
  for (int d = 0; d < p.dimension(); ++d)
    for (int c = 0; c < n; ++c) m(d, c) = k * (p.coeffs()(d, c + 1) - p.coeffs()(d, c));
  return BernsteinPoly(std::move(m), p.t0(), p.tf());
}

std::vector<double> integrate(const BernsteinPoly& p) {
  const double k = p.duration() / (p.degree() + 1);
  std::vector<double> out(p.dimension(), 0.0);
  for (int d = 0; d < p.dimension(); ++d) {
    double s = 0.0;
    for (int c = 0; c < p.coeffs().cols(); ++c) s += p.coeffs()(d, c);
    out[d] = k * s;
  }
  return out;
}

const Mat& elevation_matrix(int n, int m) {
  if (m < n) throw std::domain_error("elevation_matrix: m must be >= n");
  if (n < 0) throw std::domain_error("elevation_matrix: negative degree");

  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<Mat>> table;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = table.find({n, m});
  if (it != table.end()) return *it->second;

  auto mat = std::make_unique<Mat>(n + 1, m + 1, 0.0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m - n; ++j)
      (*mat)(i, i + j) = binomial(m - n, j) * binomial(n, i) / binomial(m, i + j);
  return *table.emplace(std::make_pair(n, m), std::move(mat)).first->second;
}

BernsteinPoly elevate(const BernsteinPoly& p, int m) {
  if (m < p.degree()) throw std::domain_error("elevate: target degree below current degree");
  if (m == p.degree()) return p;
  return BernsteinPoly(matmul(p.coeffs(), elevation_matrix(p.degree(), m)), p.t0(), p.tf());
}

namespace {

BernsteinPoly combine(const BernsteinPoly& a, const BernsteinPoly& b, double sign) {
  check_same_interval(a, b);
  if (a.dimension() != b.dimension())
    throw std::domain_error("add/subtract: dimension mismatch");
  const int m = std::max(a.degree(), b.degree());
  const BernsteinPoly ae = elevate(a, m);
  const BernsteinPoly be = elevate(b, m);
  Mat out = ae.coeffs();
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) out(r, c) += sign * be.coeffs()(r, c);
  return BernsteinPoly(std::move(out), a.t0(), a.tf());
}

}  // namespace

BernsteinPoly add(const BernsteinPoly& a, const BernsteinPoly& b) { return combine(a, b, 1.0); }
BernsteinPoly subtract(const BernsteinPoly& a, const BernsteinPoly& b) { return combine(a, b, -1.0); }

BernsteinPoly multiply(const BernsteinPoly& f, const BernsteinPoly& g) {
  check_same_interval(f, g);
  if (f.dimension() != 1 || g.dimension() != 1)
    throw std::domain_error("multiply: operands must be 1-D");
  const int m = f.degree();
  const int n = g.degree();
  Mat out(1, m + n + 1, 0.0);
  for (int k = 0; k <= m + n; ++k) {
    double s = 0.0;
    const int jlo = std::max(0, k - n);
    const int jhi = std::min(m, k);
    for (int j = jlo; j <= jhi; ++j)
      s += binomial(m, j) * binomial(n, k - j) / binomial(m + n, k) *
           f.coeffs()(0, j) * g.coeffs()(0, k - j);
    out(0, k) = s;
  }
  return BernsteinPoly(std::move(out), f.t0(), f.tf());
}

BernsteinPoly scale(const BernsteinPoly& p, double s) {
  Mat out = p.coeffs();
  for (double& v : out.data()) v *= s;
  return BernsteinPoly(std::move(out), p.t0(), p.tf());
}

BernsteinPoly add_constant(const BernsteinPoly& p, double c) {
  if (p.dimension() != 1) throw std::domain_error("add_constant: polynomial is not 1-D");
  Mat out = p.coeffs();
  for (double& v : out.data()) v += c;
  return BernsteinPoly(std::move(out), p.t0(), p.tf());
}

std::pair<std::vector<double>, std::vector<double>> end_derivatives(const BernsteinPoly& p) {
  const int n = p.degree();
  std::vector<double> d0(p.dimension(), 0.0), df(p.dimension(), 0.0);
  if (n >= 1) {
    const double k = n / p.duration();
    for (int d = 0; d < p.dimension(); ++d) {
      d0[d] = k * (p.coeffs()(d, 1) - p.coeffs()(d, 0));
      df[d] = k * (p.coeffs()(d, n) - p.coeffs()(d, n - 1));
    }
  }
  return {d0, df};
}

}  // namespace bernopt

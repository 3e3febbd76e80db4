#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace bernopt {

/// Small dense row-major matrix of doubles. Rows index spatial dimensions,
/// columns index control points throughout this library.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative shape");
  }

  static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
  }

  static Mat from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("Mat: no rows");
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows_; ++r) {
      if (static_cast<int>(rows[r].size()) != m.cols_)
        throw std::invalid_argument("Mat: ragged rows");
      for (int c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  std::vector<double> col(int c) const {
    std::vector<double> out(rows_);
    for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::vector<double> row(int r) const {
    std::vector<double> out(cols_);
    for (int c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
    return out;
  }

  void set_col(int c, const std::vector<double>& v) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// this * rhs, shapes (r x k) * (k x c).
inline Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  Mat out(a.rows(), b.cols(), 0.0);
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const double av = a(r, k);
      if (av == 0.0) continue;
      for (int c = 0; c < b.cols(); ++c) out(r, c) += av * b(k, c);
    }
  return out;
}

}  // namespace bernopt

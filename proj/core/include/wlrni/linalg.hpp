#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wlrni {

// Dense row-major double matrix. Just enough linear algebra for the model;
// kernels live in linalg.cpp.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  double* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  const double* row(int r) const {
    return data_.data() + static_cast<std::size_t>(r) * cols_;
  }
  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }
  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// out = a * b
void matmul(const Matrix& a, const Matrix& b, Matrix& out);
// out = a^T * b
void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out);
// out = a * b^T
void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out);

void add_inplace(Matrix& a, const Matrix& b);
void scale_inplace(Matrix& a, double s);

// Column sums of a, as a 1 x cols matrix.
void column_sums(const Matrix& a, Matrix& out);

// Order-independent column sums: per column, summands are sorted ascending
// before accumulation, so equal multisets of rows produce bitwise-equal sums
// no matter how the rows are arranged. This is what pins permutation
// invariance down to the last bit.
void column_sums_sorted(const Matrix& a, Matrix& out);

}  // namespace wlrni

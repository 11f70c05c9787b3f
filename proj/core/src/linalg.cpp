#include "wlrni/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace wlrni {

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul shape mismatch");
  out = Matrix(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    const double* arow = a.row(i);
    double* orow = out.row(i);
    for (int kk = 0; kk < k; ++kk) {
      const double av = arow[kk];
      const double* brow = b.row(kk);
      for (int j = 0; j < m; ++j) orow[j] += av * brow[j];
    }
  }
}

void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.rows() != b.rows()) throw std::invalid_argument("matmul_at_b shape mismatch");
  out = Matrix(a.cols(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    const double* arow = a.row(i);
    const double* brow = b.row(i);
    for (int kk = 0; kk < k; ++kk) {
      const double av = arow[kk];
      double* orow = out.row(kk);
      for (int j = 0; j < m; ++j) orow[j] += av * brow[j];
    }
  }
}

void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.cols()) throw std::invalid_argument("matmul_a_bt shape mismatch");
  // transpose b once so the inner kernel streams rows
  Matrix bt(b.cols(), b.rows());
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) bt.at(j, i) = b.at(i, j);
  matmul(a, bt, out);
}

void add_inplace(Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("add shape mismatch");
  double* pa = a.data().data();
  const double* pb = b.data().data();
  const std::size_t n = a.data().size();
  for (std::size_t i = 0; i < n; ++i) pa[i] += pb[i];
}

void scale_inplace(Matrix& a, double s) {
  for (double& v : a.data()) v *= s;
}

void column_sums(const Matrix& a, Matrix& out) {
  out = Matrix(1, a.cols());
  double* o = out.row(0);
  for (int i = 0; i < a.rows(); ++i) {
    const double* arow = a.row(i);
    for (int j = 0; j < a.cols(); ++j) o[j] += arow[j];
  }
}

void column_sums_sorted(const Matrix& a, Matrix& out) {
  out = Matrix(1, a.cols());
  double* o = out.row(0);
  std::vector<double> buf(static_cast<std::size_t>(a.rows()));
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) buf[static_cast<std::size_t>(i)] = a.at(i, j);
    std::sort(buf.begin(), buf.end());
    double s = 0.0;
    for (double v : buf) s += v;
    o[j] = s;
  }
}

}  // namespace wlrni

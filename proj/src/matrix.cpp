#include "exch/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "exch/error.hpp"
#include "exch/kernels.hpp"

namespace exch {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionError("Matrix: data length does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_sq() const { return kernels::sum_sq(data_); }
double Matrix::frobenius() const { return std::sqrt(frobenius_sq()); }
double Matrix::max_abs() const { return kernels::max_abs(data_); }

Matrix& Matrix::operator+=(const Matrix& o) {
  if (!same_shape(*this, o)) throw DimensionError("Matrix +=: shape mismatch");
  kernels::axpy(1.0, o.data_, data_);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (!same_shape(*this, o)) throw DimensionError("Matrix -=: shape mismatch");
  kernels::axpy(-1.0, o.data_, data_);
  return *this;
}

Matrix& Matrix::operator*=(double c) {
  kernels::scale(c, data_);
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double c) { return a *= c; }
Matrix operator*(double c, Matrix a) { return a *= c; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("Matrix product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  kernels::gemm_acc(a.rows(), a.cols(), b.cols(), a.data().data(), b.data().data(), c.data().data());
  return c;
}

Matrix gram_rows(const Matrix& a) {
  Matrix g(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.rows(); ++j) {
      const double v = kernels::dot(a.row(i), a.row(j));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Matrix gram_cols(const Matrix& a) { return gram_rows(a.transpose()); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

Matrix centering_projector(std::size_t n) {
  Matrix p(n, n, -1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) p(i, i) += 1.0;
  return p;
}

Matrix permutation_matrix(std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n) throw DomainError("permutation_matrix: index out of range");
    p(i, perm[i]) = 1.0;
  }
  return p;
}

bool same_shape(const Matrix& a, const Matrix& b) { return a.rows() == b.rows() && a.cols() == b.cols(); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!same_shape(a, b)) throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace exch

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace exch {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  Matrix transpose() const;
  double trace() const;
  double frobenius_sq() const;
  double frobenius() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double c);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double c);
Matrix operator*(double c, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// A·Aᵀ and Aᵀ·A.
Matrix gram_rows(const Matrix& a);
Matrix gram_cols(const Matrix& a);

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// I − (1/n)·11ᵀ.
Matrix centering_projector(std::size_t n);

/// Permutation matrix P with P(i, perm[i]) = 1, so (P·x)_i = x_{perm[i]}.
Matrix permutation_matrix(std::span<const std::size_t> perm);

bool same_shape(const Matrix& a, const Matrix& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace exch

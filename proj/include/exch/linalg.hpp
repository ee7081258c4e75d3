#pragma once

#include <cstddef>
#include <vector>

#include "exch/matrix.hpp"

namespace exch {

/// Lower-triangular L with A = L·Lᵀ; throws SolverError if A is not positive definite.
Matrix cholesky(const Matrix& a);
/// Solve (L·Lᵀ)·X = B given the Cholesky factor.
Matrix cholesky_solve(const Matrix& l, const Matrix& b);
Matrix solve_spd(const Matrix& a, const Matrix& b);
/// General square solve by LU with partial pivoting; throws SolverError when singular.
Matrix solve_lu(const Matrix& a, const Matrix& b);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns are eigenvectors
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
SymmetricEigen jacobi_eigen_symmetric(const Matrix& a, double tol = 1e-14, int max_sweeps = 100);

/// Singular values, descending, via one-sided (Hestenes) Jacobi rotations.
std::vector<double> singular_values(const Matrix& a, double tol = 1e-15, int max_sweeps = 100);

struct PowerIterationResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a symmetric PSD matrix by power iteration with a fixed pseudo-random start.
PowerIterationResult power_iteration_psd(const Matrix& g, double rel_tol = 1e-10, std::size_t max_iter = 10000);

/// Largest singular value. Power iteration on the smaller Gram matrix; falls back to
/// Jacobi SVD if the iteration does not converge.
double op_norm(const Matrix& a);

/// [[0, A], [Aᵀ, 0]].
Matrix dilation(const Matrix& a);

/// (1/(p+r))·Tr exp(λ·dilation(A)), through the eigenvalues of the dilation.
double normalized_exp(const Matrix& a, double lambda = 1.0);

/// Moore–Penrose pseudo-inverse of a symmetric matrix (eigenvalues below rel_tol·max dropped).
Matrix pinv_symmetric(const Matrix& a, double rel_tol = 1e-12);
/// Moore–Penrose pseudo-inverse, computed as (AᵀA)†·Aᵀ.
Matrix pinv(const Matrix& a, double rel_tol = 1e-12);

}  // namespace exch

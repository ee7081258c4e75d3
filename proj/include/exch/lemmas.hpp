#pragma once
// Checks of the linear-algebra identities behind the bounds.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "exch/matrix.hpp"

namespace exch {

/// Row i < n−1: (0_{i}, 1, −1/(n−1−i)·1_{n−1−i}) with 0-based i; last row zero.
Matrix lemma_matrix_a(std::size_t n);
/// Row i: (0_{i}, 1/(n−i)·1_{n−i}) with 0-based i.
Matrix lemma_matrix_b(std::size_t n);

/// (1/n!)·Σ_Π ΠᵀAΠ over all n×n permutation matrices.
Matrix permutation_average(const Matrix& a);

struct LemmaCheck {
  std::string name;
  std::size_t n = 0;
  double error = 0.0;
  double tol = 0.0;
  bool passed() const { return error <= tol; }
};

struct LemmaSuiteOptions {
  std::size_t max_n_permutation = 6;
  std::size_t instances_per_n = 20;
  std::size_t max_n_ab = 64;
  std::size_t dilation_instances = 50;
  std::uint64_t seed = 20240601;
};

/// Permutation-average identity on random matrices with zero row sums, for n = 2..max_n.
std::vector<LemmaCheck> check_permutation_average(const LemmaSuiteOptions& opt);
/// A_n† = I − B_nᵀ, A_nᵀ(I − B_n) = P⊥ and Tr((A_nᵀA_n)†) = n − H_n for n = 1..max_n.
std::vector<LemmaCheck> check_ab_identities(const LemmaSuiteOptions& opt);
/// Eigenvalues of dilation(A) against {±σ_i(A)} padded with zeros.
std::vector<LemmaCheck> check_dilation_spectrum(const LemmaSuiteOptions& opt);
/// normalized_exp(λA) ≥ exp(λ‖A‖)/(p+r) for λ > 0.
std::vector<LemmaCheck> check_trace_exp_lower_bound(const LemmaSuiteOptions& opt);

std::vector<LemmaCheck> run_lemma_suite(const LemmaSuiteOptions& opt = {});

}  // namespace exch

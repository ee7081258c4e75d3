#pragma once
// Matrix-valued data: Z = Σ_k W_k·X_k − N·W̄·X̄, measured in operator norm.

#include <cstddef>
#include <optional>
#include <vector>

#include "exch/bound_report.hpp"
#include "exch/matrix.hpp"
#include "exch/scalars.hpp"

namespace exch {

/// N equal-shape matrices.
struct MatrixSeq {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Matrix> items;

  MatrixSeq() = default;
  explicit MatrixSeq(std::vector<Matrix> m);

  std::size_t size() const { return items.size(); }
  const Matrix& operator[](std::size_t k) const { return items[k]; }
  Matrix& operator[](std::size_t k) { return items[k]; }

  void validate() const;
  Matrix mean() const;
  /// Items reordered as out[k] = items[perm[k]].
  MatrixSeq permuted(const std::vector<std::size_t>& perm) const;
};

/// N×N array of equal-shape matrices, row-major in (i, j).
struct MatrixGrid {
  std::size_t n = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Matrix> items;

  const Matrix& at(std::size_t i, std::size_t j) const { return items[i * n + j]; }
  void validate() const;
};

/// Σ_k W_k·X_k.
Matrix bilinear(const MatrixSeq& w, const MatrixSeq& x);
/// ‖Σ_k W_k·X_k − N·W̄·X̄‖.
double centered_matrix_statistic(const MatrixSeq& w, const MatrixSeq& x);

/// Witness (X̃, V) with W_k·X_j = X̃_j·V_k for all j, k.
struct CommutativityPair {
  MatrixSeq x_tilde;
  MatrixSeq v;
};

/// max over (j, k) of ‖W_k X_j − X̃_j V_k‖_F / (1 + ‖W_k‖_F‖X_j‖_F).
double commutativity_residual(const MatrixSeq& w, const MatrixSeq& x, const CommutativityPair& pair);
/// Throws ValidationError unless the residual is at most tol.
void validate_pair(const MatrixSeq& w, const MatrixSeq& x, const CommutativityPair& pair, double tol = 1e-10);

/// X_k = ξ_k·I_r, X̃_k = ξ_k·I_p, V_k = W_k for weights W_k of shape p×r.
MatrixSeq scalar_data_seq(const std::vector<double>& xi, std::size_t r);
CommutativityPair scalar_commutativity_pair(const MatrixSeq& w, const std::vector<double>& xi);

enum class WidthMode { Standard, Strengthened };

struct MatrixVarianceProfile {
  std::size_t n = 0;
  double epsilon = 0.0;
  double sigma2_X = 0.0;
  double sigma2_Xtilde = 0.0;
  double sigma2_X_infl = 0.0;
  double sigma2_Xtilde_infl = 0.0;
  double w_inf = 0.0;
  double v_inf = 0.0;
  double gram_W = 0.0;
  double gram_V = 0.0;
  double sum_sq_W = 0.0;
  double max_norm_X = 0.0;
  double max_norm_Xtilde = 0.0;
  bool has_pair = false;
  WidthMode mode = WidthMode::Standard;
};

MatrixVarianceProfile variance_profile_matrix(const MatrixSeq& w, const MatrixSeq& x, const CommutativityPair* pair,
                                              WidthMode mode = WidthMode::Standard,
                                              const EpsilonPolicy& policy = {});

/// ‖Σ_k M_k M_kᵀ‖ and ‖Σ_k M_kᵀ M_k‖.
double gram_rows_norm(const MatrixSeq& m);
double gram_cols_norm(const MatrixSeq& m);

/// 4(1+ε_N)·sqrt(2·log((p+r)/δ)·Σ‖W_k‖²); r is the column count of the data.
BoundReport hoeffding_matrix_generic(const MatrixSeq& w, std::size_t r, double delta, const EpsilonPolicy& policy = {});
/// 4·sqrt(2·log((p+r)/δ)·(1+ε_N)·max{‖ΣW_kW_kᵀ‖, ‖ΣV_kᵀV_k‖}).
BoundReport hoeffding_matrix_commut(const MatrixSeq& w, const CommutativityPair& pair, double delta,
                                    const EpsilonPolicy& policy = {});
BoundReport bernstein_matrix(const MatrixSeq& w, const MatrixSeq& x, const MatrixVarianceProfile& profile,
                             double delta);

enum class BoundKind { Hoeffding, Bernstein };

/// Bounds for ⟨w, ξ⟩ with Σw_k = 0.
BoundReport scalar_weighted_bounds(const std::vector<double>& w, const std::vector<double>& xi, double delta,
                                   BoundKind kind, const EpsilonPolicy& policy = {});
/// Bounds for ‖Σ_k W_k ξ_k‖ with W̄ = 0. L defaults to max‖W_k‖.
BoundReport matrix_weighted_bounds(const MatrixSeq& w, const std::vector<double>& xi, double delta, BoundKind kind,
                                   std::optional<double> L = std::nullopt, const EpsilonPolicy& policy = {});

/// Bound on ‖Σ_k A_{k,π(k)}‖ for uniform π over a centered array.
BoundReport combinatorial_bernstein(const MatrixGrid& a, double delta, const EpsilonPolicy& policy = {});
/// Σ_k A_{k,π(k)}.
Matrix combinatorial_sum(const MatrixGrid& a, const std::vector<std::size_t>& perm);

/// The matrix-sequence embedding of a combinatorial sum: W_k = [A_k1 … A_kN],
/// X_j = e_{π(j)} ⊗ I_n, X̃_j = e_{π(j)}ᵀ ⊗ I_m, V_k = [A_k1; …; A_kN].
struct CombinatorialEmbedding {
  MatrixSeq w;
  MatrixSeq x;
  CommutativityPair pair;
};
CombinatorialEmbedding combinatorial_embedding(const MatrixGrid& a, const std::vector<std::size_t>& perm);

}  // namespace exch

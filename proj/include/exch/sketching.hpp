#pragma once
// Sketched averaging of exchangeable parameters with discrete-sine-transform designs.

#include <cstddef>
#include <string_view>
#include <vector>

#include "exch/bound_report.hpp"
#include "exch/matrix.hpp"
#include "exch/matrix_bounds.hpp"
#include "exch/rng.hpp"

namespace exch {

enum class SketchScheme { FixedDst, DstSubsampleWo, DstSubsampleWr, Gaussian };

SketchScheme parse_sketch_scheme(std::string_view name);
std::string_view sketch_scheme_name(SketchScheme s);

/// U_ij = sqrt(2/(q+1))·sin(π·i·j/(q+1)), 1-based i, j. Symmetric and orthogonal.
Matrix dst_matrix(std::size_t q);

/// A family of N sketches acting on q×r parameters.
///
/// For the DST schemes, U_kᵀU_k = U·diag(d_k)·U and only the diagonals d_k are stored.
/// For the Gaussian scheme the q'×q blocks are stored explicitly.
struct SketchDesign {
  std::size_t q = 0;
  std::size_t q_prime = 0;
  std::size_t n = 0;
  SketchScheme scheme = SketchScheme::FixedDst;
  Matrix dst;
  std::vector<std::vector<double>> d_blocks;
  std::vector<Matrix> u_blocks;

  /// The q'×q sketch U_k (fixed and Gaussian schemes).
  Matrix block(std::size_t k) const;
  /// U_kᵀU_k as a dense q×q matrix.
  Matrix gram(std::size_t k) const;
  /// L = max_k max_i d_k[i] and M = max_i Σ_k d_k[i]².
  double L() const;
  double M() const;
};

SketchDesign build_sketch_design(std::size_t q, std::size_t q_prime, std::size_t n, SketchScheme scheme,
                                 SplitMix64& rng);
SketchDesign build_sketch_design(std::size_t q, std::size_t q_prime, std::size_t n, SketchScheme scheme,
                                 const Seed& seed);

/// θ̂ = Σ_k U_kᵀU_k·θ_k.
Matrix sketch_aggregate(const SketchDesign& design, const MatrixSeq& thetas);

/// σ̃²_θ = (1/N)Σ‖θ_k − θ̄‖²_F + ε_N·max_k‖θ_k − θ̄‖²_F.
double sketch_sigma2_infl(const MatrixSeq& thetas, double eps);

/// Tail bound on ‖θ̂ − θ̄‖ for a fixed DST design.
BoundReport sketching_bound(const SketchDesign& design, const MatrixSeq& thetas, double delta,
                            const EpsilonPolicy& policy = {});

/// (X̃, V) with W_k = U_kᵀU_k, X_k = θ_k:
/// X̃_k = I_q ⊗ [u_1ᵀθ_k … u_qᵀθ_k], V_k = [D_kũ_1 ⊗ I_r; …; D_kũ_q ⊗ I_r] (ũ_l = l-th column of U).
CommutativityPair sketch_commutativity_pair(const SketchDesign& design, const MatrixSeq& thetas);
MatrixSeq sketch_weight_seq(const SketchDesign& design);

}  // namespace exch

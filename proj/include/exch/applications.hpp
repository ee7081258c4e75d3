#pragma once
// Horvitz–Thompson estimation of an average effect under Cartesian sub-sampling.

#include <cstddef>
#include <optional>
#include <vector>

#include "exch/bound_report.hpp"
#include "exch/exchangeable_gen.hpp"
#include "exch/scalars.hpp"
#include "exch/tensor.hpp"

namespace exch {

/// Weights W = p·Y over a full factorial design, with the quantities the tail bound needs.
struct MultiFactorModel {
  std::vector<std::size_t> dims;
  DenseTensor weights;
  /// B_k ≥ max over i_k of the l1-mass of the mode-k slice i_k.
  std::vector<double> slice_bounds;
  double mu = 0.0;
  double sigma2 = 0.0;
};

/// Builds the model from W alone; B_k is the exact max slice l1-mass when not supplied.
MultiFactorModel make_model(const DenseTensor& w, std::optional<std::vector<double>> slice_bounds = std::nullopt);
/// W = p ⊙ Y.
MultiFactorModel make_model(const DenseTensor& p, const DenseTensor& y);

/// Exact max over i_k of Σ_{other indices} |W|, per mode.
std::vector<double> max_slice_l1(const DenseTensor& w);

/// μ̂ = (∏N_l/∏n_l)·Σ_{I_1×…×I_K} W.
double ht_estimate(const MultiFactorModel& m, const CartesianSample& s);
/// μ̂ = (1/p)·⟨W, X⟩ for an independent Bernoulli(p) inclusion tensor X.
double ht_estimate_bernoulli(const MultiFactorModel& m, const DenseTensor& inclusion, double p);

/// Tail bound on μ̂ − μ. With one_mode set, sizes must equal dims except for a strict
/// sub-sample of the last mode, and the single-mode expression is used.
BoundReport avg_effect_bound(const MultiFactorModel& m, const std::vector<std::size_t>& sizes, double delta,
                             bool one_mode = false, const EpsilonPolicy& policy = {});

/// W_{ijk} = (i·j·k)²/(N_1N_2N_3)² with 1-based i, j, k; generalized to any order.
DenseTensor polynomial_weight_tensor(const std::vector<std::size_t>& dims);

}  // namespace exch

#pragma once
// Variance parameters and tail thresholds for Z = ⟨W, X⟩ − (∏N_l)·W̄·X̄ with X mode-exchangeable.

#include <cstdint>
#include <vector>

#include "exch/bound_report.hpp"
#include "exch/tensor.hpp"

namespace exch {

struct TensorVarianceProfile {
  std::vector<std::size_t> dims;
  std::vector<double> epsilons;
  std::vector<double> sigma2_W;
  std::vector<double> sigma2_X;
  std::vector<double> sigma2_X_tilde;
  std::vector<double> wbar_inf;
  bool has_x = false;
  double w_mean = 0.0;
  double x_mean = 0.0;
  /// (∏N_l)·W̄·X̄, the centering constant of Z.
  double center = 0.0;
};

/// Weight-side parameters only (σ²_{W,k}, ‖w̄_k‖_∞); sufficient for the Hoeffding bound.
TensorVarianceProfile weight_profile(const DenseTensor& w, const EpsilonPolicy& policy = {});
TensorVarianceProfile variance_profile(const DenseTensor& w, const DenseTensor& x, const EpsilonPolicy& policy = {});

/// Z = ⟨W, X⟩ − (∏N_l)·W̄·X̄.
double centered_statistic(const DenseTensor& w, const DenseTensor& x);

double hoeffding_tensor_a2(const TensorVarianceProfile& p);
double bernstein_tensor_a2(const TensorVarianceProfile& p);
double bernstein_tensor_simplified_a2(const DenseTensor& w, const TensorVarianceProfile& p);
double bernstein_tensor_b(const TensorVarianceProfile& p);
/// min_k 3/(2‖w̄_k‖_∞(1+ε_k)); infinite when every w̄_k vanishes.
double bernstein_tensor_window(const TensorVarianceProfile& p);

BoundReport hoeffding_tensor(const DenseTensor& w, const TensorVarianceProfile& p, double delta);
BoundReport bernstein_tensor(const DenseTensor& w, const TensorVarianceProfile& p, double delta);
BoundReport bernstein_tensor_simplified(const DenseTensor& w, const TensorVarianceProfile& p, double delta);

enum class TensorMgfKind { Hoeffding, Bernstein };

/// The exponential right-hand side of the corresponding MGF bound at λ.
double mgf_rhs_tensor(TensorMgfKind kind, double lambda, const DenseTensor& w, const TensorVarianceProfile& p);

}  // namespace exch

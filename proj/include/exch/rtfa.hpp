#pragma once
// Ridge-tuned federated averaging with sketched uploads.

#include <cstddef>
#include <vector>

#include "exch/matrix.hpp"
#include "exch/rng.hpp"
#include "exch/sketching.hpp"

namespace exch {

struct RtfaConfig {
  std::size_t q = 200;
  std::size_t r = 1;
  std::size_t n = 80;        // samples per agent
  std::size_t agents = 20;   // N
  std::size_t q_prime = 100;
  double noise_var = 0.2;
  double lambda = 0.5;
  std::size_t rounds = 30;   // T
  /// 0 means exact local minimization; otherwise the number of local gradient steps.
  std::size_t local_steps = 0;
  double step_size = 0.1;
  SketchScheme scheme = SketchScheme::FixedDst;
};

/// Per-agent data: rows of X_k i.i.d. N(0, I_q/q), y_k = X_k·θ* + noise with θ* = e_1 in every column.
struct RtfaData {
  std::vector<Matrix> x;
  std::vector<Matrix> y;
};

RtfaData make_rtfa_data(const RtfaConfig& cfg, SplitMix64& rng);

/// Solves (X_kᵀX_k + λI)·Θ = B for one agent. Uses the n×n Woodbury form when n < q.
class RidgeSolver {
 public:
  RidgeSolver(const Matrix& x, double lambda);
  Matrix solve(const Matrix& b) const;
  /// (X_kᵀX_k + λI)⁻¹ as a dense q×q matrix.
  Matrix inverse() const;

 private:
  Matrix x_;
  double lambda_;
  bool woodbury_;
  Matrix chol_;
};

/// θ̄* = [Σ_k X_kᵀX_k(X_kᵀX_k+λI)⁻¹]⁻¹·[Σ_k (X_kᵀX_k+λI)⁻¹X_kᵀy_k].
Matrix rtfa_stationary_target(const RtfaConfig& cfg, const RtfaData& data);

struct RtfaRun {
  /// errors[t] = ‖θ̄_{t+1} − θ̄*‖ for t = 0..T−1.
  std::vector<double> errors;
  Matrix target;
  Matrix final_global;
};

/// Simulate T rounds from θ̄_0 = 0. The fixed DST design is built once; the Gaussian scheme
/// draws fresh sketches each round. A fresh uniform permutation assigns sketches every round.
RtfaRun rtfa_run(const RtfaConfig& cfg, const RtfaData& data, SplitMix64& rng);

/// One local update from the broadcast global parameter (exact or m gradient steps).
Matrix rtfa_local_update(const RtfaConfig& cfg, const Matrix& x, const Matrix& y, const RidgeSolver& solver,
                         const Matrix& global, const Matrix& local_start);

}  // namespace exch

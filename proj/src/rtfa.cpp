#include "exch/rtfa.hpp"

#include <cmath>

#include "exch/error.hpp"
#include "exch/kernels.hpp"
#include "exch/linalg.hpp"

namespace exch {

RtfaData make_rtfa_data(const RtfaConfig& cfg, SplitMix64& rng) {
  if (cfg.q == 0 || cfg.r == 0 || cfg.n == 0 || cfg.agents == 0) throw DomainError("RTFA: sizes must be positive");
  RtfaData d;
  const double sx = 1.0 / std::sqrt(static_cast<double>(cfg.q));
  const double se = std::sqrt(cfg.noise_var);
  for (std::size_t k = 0; k < cfg.agents; ++k) {
    Matrix x(cfg.n, cfg.q);
    for (auto& v : x.data()) v = sx * rng.normal();
    Matrix y(cfg.n, cfg.r);
    for (std::size_t i = 0; i < cfg.n; ++i)
      for (std::size_t c = 0; c < cfg.r; ++c) y(i, c) = x(i, 0) + se * rng.normal();
    d.x.push_back(std::move(x));
    d.y.push_back(std::move(y));
  }
  return d;
}

RidgeSolver::RidgeSolver(const Matrix& x, double lambda) : x_(x), lambda_(lambda), woodbury_(x.rows() < x.cols()) {
  if (woodbury_) {
    if (!(lambda > 0.0)) throw SolverError("RidgeSolver: lambda must be positive when n < q");
    Matrix k = gram_rows(x);
    for (std::size_t i = 0; i < k.rows(); ++i) k(i, i) += lambda;
    chol_ = cholesky(k);
  } else {
    Matrix a = gram_cols(x);
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += lambda;
    chol_ = cholesky(a);
  }
}

Matrix RidgeSolver::solve(const Matrix& b) const {
  if (!woodbury_) return cholesky_solve(chol_, b);
  // (XᵀX + λI)⁻¹ = (1/λ)(I − Xᵀ(XXᵀ + λI)⁻¹X).
  Matrix out = b - x_.transpose() * cholesky_solve(chol_, x_ * b);
  out *= 1.0 / lambda_;
  return out;
}

Matrix RidgeSolver::inverse() const { return solve(Matrix::identity(x_.cols())); }

Matrix rtfa_stationary_target(const RtfaConfig& cfg, const RtfaData& data) {
  const std::size_t q = cfg.q;
  Matrix lhs(q, q);
  Matrix rhs(q, cfg.r);
  for (std::size_t k = 0; k < data.x.size(); ++k) {
    const RidgeSolver solver(data.x[k], cfg.lambda);
    const Matrix ainv = solver.inverse();
    // X_kᵀX_k·A⁻¹ = I − λA⁻¹.
    lhs += Matrix::identity(q) - cfg.lambda * ainv;
    rhs += ainv * (data.x[k].transpose() * data.y[k]);
  }
  return solve_lu(lhs, rhs);
}

Matrix rtfa_local_update(const RtfaConfig& cfg, const Matrix& x, const Matrix& y, const RidgeSolver& solver,
                         const Matrix& global, const Matrix& local_start) {
  const Matrix xty = x.transpose() * y;
  if (cfg.local_steps == 0) return solver.solve(xty + cfg.lambda * global);
  Matrix theta = local_start;
  for (std::size_t i = 0; i < cfg.local_steps; ++i) {
    // ∇ = Xᵀ(Xθ − y) + λ(θ − θ̄), the gradient whose minimizer is the exact update.
    Matrix grad = x.transpose() * (x * theta) - xty;
    grad += cfg.lambda * (theta - global);
    theta -= cfg.step_size * grad;
  }
  return theta;
}

RtfaRun rtfa_run(const RtfaConfig& cfg, const RtfaData& data, SplitMix64& rng) {
  const std::size_t N = cfg.agents;
  if (data.x.size() != N) throw DimensionError("rtfa_run: data does not match the agent count");
  std::vector<RidgeSolver> solvers;
  solvers.reserve(N);
  for (std::size_t k = 0; k < N; ++k) solvers.emplace_back(data.x[k], cfg.lambda);
  RtfaRun run;
  run.target = rtfa_stationary_target(cfg, data);
  SketchDesign design;
  if (cfg.scheme != SketchScheme::Gaussian) design = build_sketch_design(cfg.q, cfg.q_prime, N, cfg.scheme, rng);
  Matrix global(cfg.q, cfg.r);
  std::vector<Matrix> locals(N, Matrix(cfg.q, cfg.r));
  for (std::size_t t = 0; t < cfg.rounds; ++t) {
    const auto perm = random_permutation(N, rng);
    for (std::size_t k = 0; k < N; ++k)
      locals[k] = rtfa_local_update(cfg, data.x[k], data.y[k], solvers[k], global, locals[k]);
    if (cfg.scheme == SketchScheme::Gaussian) design = build_sketch_design(cfg.q, cfg.q_prime, N, cfg.scheme, rng);
    // Agent perm[j] uploads through sketch j, i.e. θ_{π⁻¹(j)} meets U_j.
    MatrixSeq assigned;
    assigned.rows = cfg.q;
    assigned.cols = cfg.r;
    for (std::size_t j = 0; j < N; ++j) assigned.items.push_back(locals[perm[j]]);
    global = sketch_aggregate(design, assigned);
    run.errors.push_back(op_norm(global - run.target));
  }
  run.final_global = global;
  return run;
}

}  // namespace exch

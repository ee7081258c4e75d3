#include "exch/tensor_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exch/error.hpp"
#include "exch/kernels.hpp"
#include "exch/scalars.hpp"

namespace exch {

namespace {

double product(const std::vector<std::size_t>& dims, std::size_t from, std::size_t to) {
  double p = 1.0;
  for (std::size_t l = from; l < to; ++l) p *= static_cast<double>(dims[l]);
  return p;
}

// Level k+1 of the ladder (dims N_0..N_k) centered along its last mode.
DenseTensor centered_level(const ModeAverageLadder& ladder, std::size_t k) {
  return center_mode(ladder.level(k + 1), k);
}

void fill_weight_side(TensorVarianceProfile& p, const DenseTensor& w, const EpsilonPolicy& policy) {
  const std::size_t K = w.order();
  if (K == 0) throw DimensionError("tensor bounds need at least one mode");
  p.dims = w.dims();
  p.epsilons.resize(K);
  p.sigma2_W.resize(K);
  p.wbar_inf.resize(K);
  const auto ladder = mode_average_ladder(w);
  for (std::size_t k = 0; k < K; ++k) {
    p.epsilons[k] = policy.eps(k, w.dim(k));
    const DenseTensor c = centered_level(ladder, k);
    p.sigma2_W[k] = product(p.dims, k + 1, K) * kernels::sum_sq(c.data());
    // c has dims (N_0..N_k); column i of its (outer × N_k) view sums to w̄_k[i].
    const std::size_t nk = w.dim(k);
    std::vector<double> wbar(nk, 0.0);
    for (std::size_t o = 0; o < c.size() / nk; ++o)
      for (std::size_t i = 0; i < nk; ++i) wbar[i] += std::fabs(c[o * nk + i]);
    p.wbar_inf[k] = nk ? *std::max_element(wbar.begin(), wbar.end()) : 0.0;
  }
  p.w_mean = ladder.level(0)[0];
}

}  // namespace

TensorVarianceProfile weight_profile(const DenseTensor& w, const EpsilonPolicy& policy) {
  TensorVarianceProfile p;
  fill_weight_side(p, w, policy);
  return p;
}

TensorVarianceProfile variance_profile(const DenseTensor& w, const DenseTensor& x, const EpsilonPolicy& policy) {
  if (w.dims() != x.dims()) throw DimensionError("variance_profile: W and X dims differ");
  TensorVarianceProfile p;
  fill_weight_side(p, w, policy);
  const std::size_t K = x.order();
  p.sigma2_X.resize(K);
  p.sigma2_X_tilde.resize(K);
  const auto ladder = mode_average_ladder(x);
  for (std::size_t k = 0; k < K; ++k) {
    const DenseTensor c = centered_level(ladder, k);
    const double nk = static_cast<double>(x.dim(k));
    p.sigma2_X[k] = kernels::sum_sq(c.data()) / nk;
    const double linf = norm_linf(c);
    p.sigma2_X_tilde[k] = p.sigma2_X[k] + p.epsilons[k] * product(p.dims, 0, k) * linf * linf;
  }
  p.has_x = true;
  p.x_mean = ladder.level(0)[0];
  p.center = product(p.dims, 0, K) * p.w_mean * p.x_mean;
  return p;
}

double centered_statistic(const DenseTensor& w, const DenseTensor& x) {
  if (w.dims() != x.dims()) throw DimensionError("centered_statistic: dims differ");
  return inner(w, x) - static_cast<double>(w.size()) * w.mean() * x.mean();
}

double hoeffding_tensor_a2(const TensorVarianceProfile& p) {
  const std::size_t K = p.dims.size();
  double s = 0.0;
  for (std::size_t k = 0; k < K; ++k) s += (1.0 + p.epsilons[k]) / static_cast<double>(p.dims[k]) * p.sigma2_W[k];
  return product(p.dims, 0, K) * s;
}

namespace {

void require_x(const TensorVarianceProfile& p) {
  if (!p.has_x) throw ValidationError("Bernstein tensor bounds need a profile computed with X");
}

}  // namespace

double bernstein_tensor_a2(const TensorVarianceProfile& p) {
  require_x(p);
  const std::size_t K = p.dims.size();
  double s = 0.0;
  for (std::size_t k = 0; k < K; ++k)
    s += product(p.dims, k + 1, K) * (1.0 + p.epsilons[k]) * p.sigma2_W[k] * p.sigma2_X_tilde[k];
  return s;
}

double bernstein_tensor_simplified_a2(const DenseTensor& w, const TensorVarianceProfile& p) {
  require_x(p);
  const std::size_t K = p.dims.size();
  double m = 0.0;
  for (std::size_t k = 0; k < K; ++k)
    m = std::max(m, product(p.dims, k + 1, K) * (1.0 + p.epsilons[k]) * p.sigma2_X_tilde[k]);
  return kernels::sum_sq(w.data()) * m;
}

double bernstein_tensor_b(const TensorVarianceProfile& p) {
  double m = 0.0;
  for (std::size_t k = 0; k < p.dims.size(); ++k) m = std::max(m, (1.0 + p.epsilons[k]) * p.wbar_inf[k]);
  return 2.0 * m / 3.0;
}

double bernstein_tensor_window(const TensorVarianceProfile& p) {
  double w = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.dims.size(); ++k) {
    const double d = 2.0 * p.wbar_inf[k] * (1.0 + p.epsilons[k]);
    if (d > 0.0) w = std::min(w, 3.0 / d);
  }
  return w;
}

namespace {

void finish_bernstein(BoundReport& r, const TensorVarianceProfile& p) {
  r.lambda_window = bernstein_tensor_window(p);
  r.lambda_opt_in_window = !r.lambda_opt || *r.lambda_opt <= r.lambda_window;
  r.epsilons = p.epsilons;
  r.extras["center"] = p.center;
}

}  // namespace

BoundReport hoeffding_tensor(const DenseTensor& w, const TensorVarianceProfile& p, double delta) {
  if (w.dims() != p.dims) throw DimensionError("hoeffding_tensor: profile dims differ from W");
  auto r = make_report("tensor_hoeffding", hoeffding_tensor_a2(p), 0.0, 1.0, delta);
  const double vol = product(p.dims, 0, p.dims.size());
  for (std::size_t k = 0; k < p.dims.size(); ++k)
    r.contributions.push_back(vol * (1.0 + p.epsilons[k]) / static_cast<double>(p.dims[k]) * p.sigma2_W[k]);
  r.epsilons = p.epsilons;
  if (p.has_x) r.extras["center"] = p.center;
  return r;
}

BoundReport bernstein_tensor(const DenseTensor& w, const TensorVarianceProfile& p, double delta) {
  if (w.dims() != p.dims) throw DimensionError("bernstein_tensor: profile dims differ from W");
  auto r = make_report("tensor_bernstein", bernstein_tensor_a2(p), bernstein_tensor_b(p), 1.0, delta);
  const std::size_t K = p.dims.size();
  for (std::size_t k = 0; k < K; ++k)
    r.contributions.push_back(product(p.dims, k + 1, K) * (1.0 + p.epsilons[k]) * p.sigma2_W[k] *
                              p.sigma2_X_tilde[k]);
  finish_bernstein(r, p);
  return r;
}

BoundReport bernstein_tensor_simplified(const DenseTensor& w, const TensorVarianceProfile& p, double delta) {
  if (w.dims() != p.dims) throw DimensionError("bernstein_tensor_simplified: profile dims differ from W");
  auto r = make_report("tensor_bernstein_simplified", bernstein_tensor_simplified_a2(w, p), bernstein_tensor_b(p),
                       1.0, delta);
  finish_bernstein(r, p);
  return r;
}

double mgf_rhs_tensor(TensorMgfKind kind, double lambda, const DenseTensor& w, const TensorVarianceProfile& p) {
  if (w.dims() != p.dims) throw DimensionError("mgf_rhs_tensor: profile dims differ from W");
  if (kind == TensorMgfKind::Hoeffding) return mgf_gaussian_rhs(lambda, hoeffding_tensor_a2(p));
  require_x(p);
  if (!(std::fabs(lambda) < bernstein_tensor_window(p)))
    throw DomainError("mgf_rhs_tensor: lambda outside the Bernstein validity window");
  const std::size_t K = p.dims.size();
  double expo = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double denom = 1.0 - (2.0 * std::fabs(lambda) / 3.0) * p.wbar_inf[k] * (1.0 + p.epsilons[k]);
    expo += (1.0 + p.epsilons[k]) * product(p.dims, k + 1, K) * p.sigma2_W[k] * p.sigma2_X_tilde[k] / denom;
  }
  return std::exp(lambda * lambda / 2.0 * expo);
}

}  // namespace exch

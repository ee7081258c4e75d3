#include "exch/applications.hpp"

#include <algorithm>
#include <cmath>

#include "exch/error.hpp"
#include "exch/kernels.hpp"

namespace exch {

std::vector<double> max_slice_l1(const DenseTensor& w) {
  const std::size_t K = w.order();
  std::vector<double> out(K, 0.0);
  DenseTensor a = w;
  for (auto& v : a.data()) v = std::fabs(v);
  for (std::size_t k = 0; k < K; ++k) {
    // Sum |W| over every mode but k by contracting with all-ones rows.
    DenseTensor t = a;
    for (std::size_t l = 0; l < K; ++l) {
      if (l == k) continue;
      t = mode_product(t, Matrix(1, t.dim(l), 1.0), l);
    }
    out[k] = norm_linf(t);
  }
  return out;
}

MultiFactorModel make_model(const DenseTensor& w, std::optional<std::vector<double>> slice_bounds) {
  if (w.order() == 0) throw DimensionError("make_model: weights need at least one mode");
  MultiFactorModel m;
  m.dims = w.dims();
  m.weights = w;
  const auto exact = max_slice_l1(w);
  if (slice_bounds) {
    if (slice_bounds->size() != exact.size()) throw DimensionError("make_model: one slice bound per mode");
    for (std::size_t k = 0; k < exact.size(); ++k)
      if ((*slice_bounds)[k] + 1e-12 * (1.0 + exact[k]) < exact[k])
        throw ValidationError("make_model: slice bound B_k is below the max slice l1-mass");
    m.slice_bounds = *slice_bounds;
  } else {
    m.slice_bounds = exact;
  }
  m.mu = w.sum();
  const double vol = static_cast<double>(w.size());
  m.sigma2 = vol * kernels::sum_sq(w.data()) - m.mu * m.mu;
  if (m.sigma2 < 0.0) {
    if (m.sigma2 < -1e-10 * (1.0 + m.mu * m.mu)) throw ValidationError("make_model: negative variance");
    m.sigma2 = 0.0;
  }
  return m;
}

MultiFactorModel make_model(const DenseTensor& p, const DenseTensor& y) {
  if (p.dims() != y.dims()) throw DimensionError("make_model: p and Y dims differ");
  DenseTensor w = p;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] *= y[i];
  return make_model(w);
}

double ht_estimate(const MultiFactorModel& m, const CartesianSample& s) {
  if (s.dims != m.dims) throw DimensionError("ht_estimate: sample dims differ from the model");
  const std::size_t K = m.dims.size();
  // Gather the sampled block mode by mode, then sum it.
  DenseTensor t = m.weights;
  double scale = 1.0;
  for (std::size_t k = 0; k < K; ++k) {
    Matrix sel(s.index_sets[k].size(), m.dims[k]);
    for (std::size_t r = 0; r < s.index_sets[k].size(); ++r) sel(r, s.index_sets[k][r]) = 1.0;
    t = mode_product(t, sel, k);
    scale *= static_cast<double>(m.dims[k]) / static_cast<double>(s.index_sets[k].size());
  }
  return scale * t.sum();
}

double ht_estimate_bernoulli(const MultiFactorModel& m, const DenseTensor& inclusion, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("ht_estimate_bernoulli: p must lie in (0,1]");
  return inner(m.weights, inclusion) / p;
}

BoundReport avg_effect_bound(const MultiFactorModel& m, const std::vector<std::size_t>& sizes, double delta,
                             bool one_mode, const EpsilonPolicy& policy) {
  const std::size_t K = m.dims.size();
  if (sizes.size() != K) throw DimensionError("avg_effect_bound: one size per mode");
  for (std::size_t k = 0; k < K; ++k)
    if (sizes[k] < 1 || sizes[k] > m.dims[k]) throw DomainError("avg_effect_bound: need 1 <= n_k <= N_k");
  std::vector<double> eps(K);
  std::vector<double> alpha(K);
  double num = 1.0;
  double den = 1.0;
  for (std::size_t k = 0; k < K; ++k) {
    eps[k] = policy.eps(k, m.dims[k]);
    num *= static_cast<double>(sizes[k]);
    den *= static_cast<double>(m.dims[k]);
    alpha[k] = num / den;
  }
  double bmax = 0.0;
  for (std::size_t k = 0; k < K; ++k) bmax = std::max(bmax, m.slice_bounds[k] * (1.0 + eps[k]));
  double factor = 0.0;
  double alpha_lin = alpha[K - 1];
  std::vector<double> contrib(K, 0.0);
  if (one_mode) {
    for (std::size_t k = 0; k + 1 < K; ++k)
      if (sizes[k] != m.dims[k]) throw DomainError("avg_effect_bound: one-mode form needs n_l = N_l for l < K");
    if (sizes[K - 1] >= m.dims[K - 1]) throw DomainError("avg_effect_bound: one-mode form needs n_K < N_K");
    const double a = static_cast<double>(sizes[K - 1]) / static_cast<double>(m.dims[K - 1]);
    const double e = eps[K - 1];
    factor = (1.0 + e) / (static_cast<double>(m.dims[K - 1]) * a) * (1.0 - a + e / a);
    contrib[K - 1] = factor;
    alpha_lin = a;
  } else {
    for (std::size_t k = 0; k < K; ++k) {
      const double nk = static_cast<double>(m.dims[k]);
      const double rate = static_cast<double>(sizes[k]) / nk;
      const double sub = sizes[k] < m.dims[k] ? eps[k] / alpha[k] : 0.0;
      contrib[k] = (1.0 + eps[k]) / (nk * alpha[k]) * (1.0 - rate + sub);
      factor = std::max(factor, contrib[k]);
    }
  }
  auto rep = make_report(one_mode ? "avg_effect_one_mode" : "avg_effect", m.sigma2 * factor,
                         2.0 * bmax / (3.0 * alpha_lin), 1.0, delta);
  rep.epsilons = eps;
  rep.contributions = contrib;
  rep.extras["sigma2"] = m.sigma2;
  rep.extras["mu"] = m.mu;
  return rep;
}

DenseTensor polynomial_weight_tensor(const std::vector<std::size_t>& dims) {
  DenseTensor t = DenseTensor::scalar(1.0);
  for (std::size_t n : dims) {
    std::vector<double> v(n);
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i + 1) / nn;
      v[i] = x * x;
    }
    t = outer(t, DenseTensor::vector(std::move(v)));
  }
  return t;
}

}  // namespace exch

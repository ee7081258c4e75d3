#include "exch/exchangeable_gen.hpp"

#include <cmath>

#include "exch/error.hpp"

namespace exch {

DenseTensor mode_permute(const DenseTensor& t, SplitMix64& rng) {
  DenseTensor out = t;
  for (std::size_t k = 0; k < t.order(); ++k) {
    const auto perm = random_permutation(t.dim(k), rng);
    out = permute_mode(out, perm, k);
  }
  return out;
}

DenseTensor mode_permute(const DenseTensor& t, const Seed& seed) {
  auto rng = seed.stream();
  return mode_permute(t, rng);
}

DenseTensor sign_tensor(const std::vector<std::size_t>& dims, SplitMix64& rng) {
  DenseTensor t(dims);
  for (auto& v : t.data()) v = (rng.next() >> 63) ? 1.0 : -1.0;
  return t;
}

DenseTensor sign_tensor(const std::vector<std::size_t>& dims, const Seed& seed) {
  auto rng = seed.stream();
  return sign_tensor(dims, rng);
}

DenseTensor low_info_tensor(const std::vector<std::size_t>& dims, SplitMix64& rng) {
  if (dims.empty()) throw DimensionError("low_info_tensor: needs at least one mode");
  const DenseTensor y = sign_tensor({dims.front()}, rng);
  return broadcast_trailing(y, dims);
}

DenseTensor low_info_tensor(const std::vector<std::size_t>& dims, const Seed& seed) {
  auto rng = seed.stream();
  return low_info_tensor(dims, rng);
}

DenseTensor bernoulli_tensor(const std::vector<std::size_t>& dims, double p, SplitMix64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli_tensor: p must lie in [0,1]");
  DenseTensor t(dims);
  for (auto& v : t.data()) v = rng.bernoulli(p) ? 1.0 : 0.0;
  return t;
}

DenseTensor bernoulli_tensor(const std::vector<std::size_t>& dims, double p, const Seed& seed) {
  auto rng = seed.stream();
  return bernoulli_tensor(dims, p, rng);
}

CartesianSample cartesian_subsample(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sizes,
                                    SplitMix64& rng) {
  if (dims.size() != sizes.size()) throw DimensionError("cartesian_subsample: dims and sizes differ in length");
  CartesianSample s{dims, sizes, {}};
  for (std::size_t l = 0; l < dims.size(); ++l) {
    if (sizes[l] < 1 || sizes[l] > dims[l]) throw DomainError("cartesian_subsample: need 1 <= n_l <= N_l");
    s.index_sets.push_back(random_subset(dims[l], sizes[l], rng));
  }
  return s;
}

CartesianSample cartesian_subsample(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sizes,
                                    const Seed& seed) {
  auto rng = seed.stream();
  return cartesian_subsample(dims, sizes, rng);
}

DenseTensor indicator_tensor(const CartesianSample& s) {
  DenseTensor t = DenseTensor::scalar(1.0);
  for (std::size_t l = 0; l < s.dims.size(); ++l) {
    std::vector<double> ind(s.dims[l], 0.0);
    for (std::size_t i : s.index_sets[l]) ind.at(i) = 1.0;
    t = outer(t, DenseTensor::vector(std::move(ind)));
  }
  return t;
}

MatrixSeq exchangeable_matrix_seq(const MatrixSeq& base, SplitMix64& rng) {
  base.validate();
  return base.permuted(random_permutation(base.size(), rng));
}

MatrixSeq exchangeable_matrix_seq(const MatrixSeq& base, const Seed& seed) {
  auto rng = seed.stream();
  return exchangeable_matrix_seq(base, rng);
}

std::vector<double> ar1_vector(std::size_t q, double rho, SplitMix64& rng) {
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("ar1_vector: rho must lie in (-1,1)");
  std::vector<double> x(q);
  const double innov = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < q; ++i) x[i] = i == 0 ? rng.normal() : rho * x[i - 1] + innov * rng.normal();
  return x;
}

MatrixSeq conditional_gaussian_thetas(std::size_t q, std::size_t r, std::size_t n, double rho, SplitMix64& rng) {
  if (q == 0 || r == 0 || n == 0) throw DimensionError("conditional_gaussian_thetas: sizes must be positive");
  const double s = 1.0 / std::sqrt(static_cast<double>(q));
  Matrix mu(q, r);
  for (std::size_t c = 0; c < r; ++c) {
    const auto col = ar1_vector(q, rho, rng);
    for (std::size_t i = 0; i < q; ++i) mu(i, c) = s * col[i];
  }
  std::vector<Matrix> items;
  items.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Matrix th = mu;
    for (auto& v : th.data()) v += s * rng.normal();
    items.push_back(std::move(th));
  }
  return MatrixSeq(std::move(items));
}

MatrixSeq conditional_gaussian_thetas(std::size_t q, std::size_t r, std::size_t n, double rho, const Seed& seed) {
  auto rng = seed.stream();
  return conditional_gaussian_thetas(q, r, n, rho, rng);
}

}  // namespace exch

#pragma once
// Seeded generators of exchangeable randomness.

#include <cstddef>
#include <vector>

#include "exch/matrix_bounds.hpp"
#include "exch/rng.hpp"
#include "exch/tensor.hpp"

namespace exch {

/// Apply one independent uniform permutation per mode.
DenseTensor mode_permute(const DenseTensor& t, SplitMix64& rng);
DenseTensor mode_permute(const DenseTensor& t, const Seed& seed);

/// Independent uniform ±1 entries.
DenseTensor sign_tensor(const std::vector<std::size_t>& dims, SplitMix64& rng);
DenseTensor sign_tensor(const std::vector<std::size_t>& dims, const Seed& seed);

/// Y ⊗ 1 ⊗ … ⊗ 1 with Y ∈ {±1}^{N_0} i.i.d. uniform.
DenseTensor low_info_tensor(const std::vector<std::size_t>& dims, SplitMix64& rng);
DenseTensor low_info_tensor(const std::vector<std::size_t>& dims, const Seed& seed);

/// Independent Bernoulli(p) entries.
DenseTensor bernoulli_tensor(const std::vector<std::size_t>& dims, double p, SplitMix64& rng);
DenseTensor bernoulli_tensor(const std::vector<std::size_t>& dims, double p, const Seed& seed);

struct CartesianSample {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> sizes;
  /// Sorted, 0-based index set per mode.
  std::vector<std::vector<std::size_t>> index_sets;
};

CartesianSample cartesian_subsample(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sizes,
                                    SplitMix64& rng);
CartesianSample cartesian_subsample(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sizes,
                                    const Seed& seed);

/// X_{i_0…i_{K−1}} = ∏_l 1{i_l ∈ I_l}.
DenseTensor indicator_tensor(const CartesianSample& s);

/// The base sequence in uniformly permuted order.
MatrixSeq exchangeable_matrix_seq(const MatrixSeq& base, SplitMix64& rng);
MatrixSeq exchangeable_matrix_seq(const MatrixSeq& base, const Seed& seed);

/// Stationary AR(1) vector with unit marginal variance: x_0 = z_0, x_i = ρx_{i−1} + sqrt(1−ρ²)z_i.
std::vector<double> ar1_vector(std::size_t q, double rho, SplitMix64& rng);

/// θ_k = μ + g_k/sqrt(q), g_k standard Gaussian, μ = (AR(1) draw)/sqrt(q) per column; each θ_k is q×r.
MatrixSeq conditional_gaussian_thetas(std::size_t q, std::size_t r, std::size_t n, double rho, SplitMix64& rng);
MatrixSeq conditional_gaussian_thetas(std::size_t q, std::size_t r, std::size_t n, double rho, const Seed& seed);

}  // namespace exch

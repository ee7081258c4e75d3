#pragma once
// Exact enumeration over all equiprobable outcomes of small permutation and subset laws.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace exch {

inline constexpr std::uint64_t kMaxExhaustiveOutcomes = 1'000'000;

/// n! with a guard; throws DomainError above kMaxExhaustiveOutcomes.
std::uint64_t guarded_factorial(std::size_t n);
/// ∏_l C(N_l, n_l) with the same guard.
std::uint64_t guarded_cartesian_count(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sizes);

/// Calls f on every permutation of {0..n−1} in lexicographic order.
void for_each_permutation(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f);

/// Calls f on every Cartesian product of k-subsets (sorted index lists per mode).
void for_each_cartesian_sample(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sizes,
                               const std::function<void(const std::vector<std::vector<std::size_t>>&)>& f);

/// Exact P(statistic(π) ≥ threshold) for uniform π over S_n.
double exhaustive_permutation_tail(std::size_t n, const std::function<double(const std::vector<std::size_t>&)>& statistic,
                                   double threshold);

/// Exact law of a permutation statistic: all n! values in lexicographic permutation order.
std::vector<double> permutation_values(std::size_t n,
                                       const std::function<double(const std::vector<std::size_t>&)>& statistic);

/// Fraction of values ≥ threshold.
double exceedance(const std::vector<double>& values, double threshold);

}  // namespace exch

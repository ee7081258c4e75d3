#include "exch/exhaustive.hpp"

#include <algorithm>
#include <numeric>

#include "exch/error.hpp"

namespace exch {

std::uint64_t guarded_factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > kMaxExhaustiveOutcomes) throw DomainError("exhaustive enumeration exceeds 10^6 outcomes");
  }
  return f;
}

namespace {

std::uint64_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > kMaxExhaustiveOutcomes) throw DomainError("exhaustive enumeration exceeds 10^6 outcomes");
  }
  return c;
}

}  // namespace

std::uint64_t guarded_cartesian_count(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sizes) {
  if (dims.size() != sizes.size()) throw DimensionError("dims and sizes differ in length");
  std::uint64_t total = 1;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    total *= binom(dims[l], sizes[l]);
    if (total > kMaxExhaustiveOutcomes) throw DomainError("exhaustive enumeration exceeds 10^6 outcomes");
  }
  return total;
}

void for_each_permutation(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
  guarded_factorial(n);
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

namespace {

// Advance a sorted k-subset of {0..n−1} to the next one in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void for_each_cartesian_sample(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sizes,
                               const std::function<void(const std::vector<std::vector<std::size_t>>&)>& f) {
  guarded_cartesian_count(dims, sizes);
  const std::size_t K = dims.size();
  std::vector<std::vector<std::size_t>> sets(K);
  for (std::size_t l = 0; l < K; ++l) {
    if (sizes[l] < 1 || sizes[l] > dims[l]) throw DomainError("cartesian enumeration: need 1 <= n_l <= N_l");
    sets[l].resize(sizes[l]);
    std::iota(sets[l].begin(), sets[l].end(), std::size_t{0});
  }
  while (true) {
    f(sets);
    std::size_t l = K;
    while (l > 0) {
      --l;
      if (next_combination(sets[l], dims[l])) break;
      std::iota(sets[l].begin(), sets[l].end(), std::size_t{0});
      if (l == 0) return;
    }
    if (K == 0) return;
  }
}

std::vector<double> permutation_values(std::size_t n,
                                       const std::function<double(const std::vector<std::size_t>&)>& statistic) {
  std::vector<double> out;
  out.reserve(guarded_factorial(n));
  for_each_permutation(n, [&](const std::vector<std::size_t>& p) { out.push_back(statistic(p)); });
  return out;
}

double exceedance(const std::vector<double>& values, double threshold) {
  if (values.empty()) return 0.0;
  const auto c = std::count_if(values.begin(), values.end(), [&](double v) { return v >= threshold; });
  return static_cast<double>(c) / static_cast<double>(values.size());
}

double exhaustive_permutation_tail(std::size_t n, const std::function<double(const std::vector<std::size_t>&)>& statistic,
                                   double threshold) {
  return exceedance(permutation_values(n, statistic), threshold);
}

}  // namespace exch

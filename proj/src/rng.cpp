#include "exch/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "exch/error.hpp"

namespace exch {

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform_int(std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_int: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

double SplitMix64::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

std::uint64_t purpose_tag(std::string_view purpose) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SplitMix64 Seed::stream() const {
  std::uint64_t s = splitmix64_mix(master + 0x9E3779B97F4A7C15ULL);
  s = splitmix64_mix(s ^ (trial + 0xD1B54A32D192ED03ULL));
  s = splitmix64_mix(s ^ (purpose + 0x8CB92BA72F3D8DD7ULL));
  return SplitMix64(s);
}

std::vector<std::size_t> random_permutation(std::size_t n, SplitMix64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.uniform_int(i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

std::vector<std::size_t> random_permutation(std::size_t n, const Seed& seed) {
  auto rng = seed.stream();
  return random_permutation(n, rng);
}

std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, SplitMix64& rng) {
  if (k > n) throw DomainError("random_subset: k exceeds n");
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_int(n - i);
    std::swap(p[i], p[j]);
  }
  p.resize(k);
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace exch

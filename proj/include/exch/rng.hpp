#pragma once
// SplitMix64-based random streams.
//
// A stream is identified by (master, trial, purpose). The three words are
// folded through the SplitMix64 finalizer, so neighbouring trial indices give
// unrelated streams and the same triple always replays the same draws.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace exch {

std::uint64_t splitmix64_mix(std::uint64_t z);

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., n-1}, unbiased (rejection on the top zone).
  std::uint64_t uniform_int(std::uint64_t n);

  /// Standard normal via Box–Muller; the second variate is cached.
  double normal();

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// FNV-1a hash used to turn purpose strings into stream tags.
std::uint64_t purpose_tag(std::string_view purpose);

struct Seed {
  std::uint64_t master = 0;
  std::uint64_t trial = 0;
  std::uint64_t purpose = 0;

  Seed with_trial(std::uint64_t t) const { return {master, t, purpose}; }
  Seed with_purpose(std::string_view p) const { return {master, trial, purpose_tag(p)}; }
  Seed with_purpose(std::uint64_t p) const { return {master, trial, p}; }

  SplitMix64 stream() const;
};

/// Uniform permutation of {0, ..., n-1} (Fisher–Yates).
std::vector<std::size_t> random_permutation(std::size_t n, SplitMix64& rng);
std::vector<std::size_t> random_permutation(std::size_t n, const Seed& seed);

/// Uniform k-subset of {0, ..., n-1}, returned sorted (partial Fisher–Yates).
std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, SplitMix64& rng);

}  // namespace exch

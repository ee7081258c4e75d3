#pragma once
// Exact tail certification of the permutation bounds on small instances.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace exch {

struct CertificationResult {
  std::string family;  // scalar_weighted | matrix_weighted | combinatorial
  std::string bound;   // report kind
  std::size_t instance = 0;
  std::size_t n = 0;
  double delta = 0.0;
  double threshold = 0.0;
  /// Exact P(statistic ≥ threshold) over all n! permutations.
  double exceedance = 0.0;
  bool passed() const { return exceedance <= delta; }
};

struct CertificationOptions {
  std::size_t instances = 50;
  std::size_t min_n = 2;
  std::size_t max_n = 6;
  std::vector<double> deltas{0.05, 0.1, 0.2};
  std::uint64_t seed = 7;
};

/// Random mean-zero weights (scalar and matrix) and centered arrays with data in [−1, 1];
/// every Hoeffding and Bernstein threshold is checked against the exact permutation law.
std::vector<CertificationResult> certify_small_n(const CertificationOptions& opt = {});

}  // namespace exch

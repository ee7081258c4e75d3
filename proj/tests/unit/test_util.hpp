#pragma once

#include <cmath>
#include <vector>

#include "exch/matrix.hpp"
#include "exch/rng.hpp"
#include "exch/tensor.hpp"

namespace testutil {

inline exch::Matrix random_matrix(std::size_t r, std::size_t c, exch::SplitMix64& rng) {
  exch::Matrix m(r, c);
  for (auto& v : m.data()) v = rng.normal();
  return m;
}

inline exch::DenseTensor random_tensor(const std::vector<std::size_t>& dims, exch::SplitMix64& rng) {
  exch::DenseTensor t(dims);
  for (auto& v : t.data()) v = 2.0 * rng.uniform01() - 1.0;
  return t;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol * (1.0 + std::fabs(b)); }

}  // namespace testutil

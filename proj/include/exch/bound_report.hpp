#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exch/scalars.hpp"

namespace exch {

/// A tail threshold split into its sub-Gaussian and linear parts.
///
/// threshold = variance_term + linear_term, where
///   variance_term = a·sqrt(2·log(dim_factor/δ)),  linear_term = b·log(dim_factor/δ).
struct BoundReport {
  std::string kind;
  double delta = 0.0;
  double dim_factor = 1.0;
  double a2 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double variance_term = 0.0;
  double linear_term = 0.0;
  double threshold = 0.0;
  /// Largest admissible |λ| of the underlying MGF bound (infinite for Hoeffding).
  double lambda_window = std::numeric_limits<double>::infinity();
  /// λ minimizing the Chernoff exponent, when it is finite; flags window tightness.
  std::optional<double> lambda_opt;
  bool lambda_opt_in_window = true;
  std::vector<double> epsilons;
  std::vector<double> contributions;
  /// Named caller contracts (‖X_k‖ ≤ 1 and similar) with whether they held.
  std::map<std::string, bool> contracts;
  std::map<std::string, double> extras;
};

/// Fill variance/linear/threshold fields from a, b, dim_factor, δ.
BoundReport make_report(std::string kind, double a2, double b, double dim_factor, double delta);

}  // namespace exch

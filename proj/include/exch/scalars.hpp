#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace exch {

/// Harmonic number H_n. Kahan-summed up to 10^6 terms, asymptotic series beyond.
double harmonic(std::uint64_t n);

/// ε_n = (H_n − 1)/(n − H_n) for n ≥ 2, ε_1 = 0.
double epsilon(std::uint64_t n);

class EpsilonTable {
 public:
  explicit EpsilonTable(std::uint64_t max_n);
  std::uint64_t max_n() const { return static_cast<std::uint64_t>(values_.size()); }
  /// 1-based lookup.
  double operator[](std::uint64_t n) const;

 private:
  std::vector<double> values_;
};

struct TailSpec {
  double a = 0.0;
  double b = 0.0;
  double dim_factor = 1.0;
  double delta = 0.05;

  void validate() const;
};

/// a·sqrt(2·log(dim/δ)) + b·log(dim/δ).
double tail_threshold(const TailSpec& spec);

/// log(dim/δ) after validating δ ∈ (0,1) and dim ≥ 1.
double log_term(double dim_factor, double delta);

double mgf_gaussian_rhs(double lambda, double a2);

/// exp(λ²a²/(2(1 − b|λ|))); throws DomainError when |λ| ≥ 1/b.
double mgf_bernstein_rhs(double lambda, double a2, double b);

/// How the inflation constant ε is chosen per mode.
///
/// Exact uses ε_{N_k}. Zero forces ε = 0 (independent-data limit). An override
/// substitutes ε_{Ñ} for a mode, for data embedded in a longer exchangeable sequence.
struct EpsilonPolicy {
  bool zero = false;
  std::vector<std::optional<std::uint64_t>> n_override;

  static EpsilonPolicy exact() { return {}; }
  static EpsilonPolicy independent() { return {true, {}}; }
  /// Override only the last of `order` modes.
  static EpsilonPolicy override_last(std::size_t order, std::uint64_t n_tilde);

  double eps(std::size_t mode, std::uint64_t n_mode) const;
};

}  // namespace exch

#include "exch/scalars.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "exch/error.hpp"

namespace exch {

namespace {

constexpr std::uint64_t kKahanLimit = 1'000'000;

}  // namespace

double harmonic(std::uint64_t n) {
  if (n == 0) return 0.0;
  if (n > kKahanLimit) {
    const double x = static_cast<double>(n);
    return std::log(x) + std::numbers::egamma + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x) +
           1.0 / (120.0 * x * x * x * x);
  }
  // Summing the small terms first keeps the compensation effective.
  double s = 0.0;
  double c = 0.0;
  for (std::uint64_t i = n; i >= 1; --i) {
    const double y = 1.0 / static_cast<double>(i) - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

double epsilon(std::uint64_t n) {
  if (n == 0) throw DomainError("epsilon: n must be at least 1");
  if (n == 1) return 0.0;
  if (n == 2) return 1.0;
  const double h = harmonic(n);
  return (h - 1.0) / (static_cast<double>(n) - h);
}

EpsilonTable::EpsilonTable(std::uint64_t max_n) {
  if (max_n == 0) throw DomainError("EpsilonTable: max_n must be at least 1");
  values_.resize(max_n);
  double s = 0.0;
  double c = 0.0;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    const double y = 1.0 / static_cast<double>(n) - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
    if (n == 1) {
      values_[0] = 0.0;
    } else if (n == 2) {
      values_[1] = 1.0;
    } else {
      values_[n - 1] = (s - 1.0) / (static_cast<double>(n) - s);
    }
  }
}

double EpsilonTable::operator[](std::uint64_t n) const {
  if (n == 0 || n > values_.size()) throw DomainError("EpsilonTable: index out of range");
  return values_[n - 1];
}

void TailSpec::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie strictly inside (0,1)");
  if (!(a >= 0.0)) throw DomainError("a must be nonnegative");
  if (!(b >= 0.0)) throw DomainError("b must be nonnegative");
  if (!(dim_factor >= 1.0)) throw DomainError("dim_factor must be at least 1");
}

double log_term(double dim_factor, double delta) {
  TailSpec{0.0, 0.0, dim_factor, delta}.validate();
  return std::log(dim_factor / delta);
}

double tail_threshold(const TailSpec& spec) {
  spec.validate();
  const double l = std::log(spec.dim_factor / spec.delta);
  return spec.a * std::sqrt(2.0 * l) + spec.b * l;
}

double mgf_gaussian_rhs(double lambda, double a2) {
  if (!(a2 >= 0.0)) throw DomainError("mgf_gaussian_rhs: a2 must be nonnegative");
  return std::exp(lambda * lambda * a2 / 2.0);
}

double mgf_bernstein_rhs(double lambda, double a2, double b) {
  if (!(a2 >= 0.0) || !(b >= 0.0)) throw DomainError("mgf_bernstein_rhs: a2 and b must be nonnegative");
  const double denom = 1.0 - b * std::fabs(lambda);
  if (!(denom > 0.0)) {
    throw DomainError("mgf_bernstein_rhs: |lambda| = " + std::to_string(std::fabs(lambda)) +
                      " is outside the validity window |lambda| < 1/b");
  }
  return std::exp(lambda * lambda * a2 / (2.0 * denom));
}

EpsilonPolicy EpsilonPolicy::override_last(std::size_t order, std::uint64_t n_tilde) {
  EpsilonPolicy p;
  if (order == 0) return p;
  p.n_override.assign(order, std::nullopt);
  p.n_override.back() = n_tilde;
  return p;
}

double EpsilonPolicy::eps(std::size_t mode, std::uint64_t n_mode) const {
  if (zero) return 0.0;
  if (mode < n_override.size() && n_override[mode]) {
    if (*n_override[mode] < n_mode) throw DomainError("epsilon override must not be shorter than the mode it embeds");
    return epsilon(*n_override[mode]);
  }
  return epsilon(n_mode);
}

}  // namespace exch

#include "exch/lemmas.hpp"

#include <algorithm>
#include <cmath>

#include "exch/exhaustive.hpp"
#include "exch/linalg.hpp"
#include "exch/rng.hpp"
#include "exch/scalars.hpp"

namespace exch {

Matrix lemma_matrix_a(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a(i, i) = 1.0;
    const double v = -1.0 / static_cast<double>(n - 1 - i);
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = v;
  }
  return a;
}

Matrix lemma_matrix_b(std::size_t n) {
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = 1.0 / static_cast<double>(n - i);
    for (std::size_t j = i; j < n; ++j) b(i, j) = v;
  }
  return b;
}

Matrix permutation_average(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix acc(n, n);
  std::uint64_t count = 0;
  for_each_permutation(n, [&](const std::vector<std::size_t>& p) {
    // (ΠᵀAΠ)_{ij} = A_{p(i), p(j)} for Π with Π(p(i), i) = 1.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) acc(i, j) += a(p[i], p[j]);
    ++count;
  });
  acc *= 1.0 / static_cast<double>(count);
  return acc;
}

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, SplitMix64& rng) {
  Matrix m(r, c);
  for (auto& v : m.data()) v = rng.normal();
  return m;
}

}  // namespace

std::vector<LemmaCheck> check_permutation_average(const LemmaSuiteOptions& opt) {
  std::vector<LemmaCheck> out;
  SplitMix64 rng = Seed{opt.seed, 0, purpose_tag("lemma/permutation-average")}.stream();
  for (std::size_t n = 2; n <= opt.max_n_permutation; ++n) {
    LemmaCheck c{"permutation_average", n, 0.0, 1e-12};
    for (std::size_t inst = 0; inst < opt.instances_per_n; ++inst) {
      Matrix a = random_matrix(n, n, rng);
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a(i, j);
        for (std::size_t j = 0; j < n; ++j) a(i, j) -= s / static_cast<double>(n);
      }
      const Matrix expected = centering_projector(n) * (a.trace() / static_cast<double>(n - 1));
      c.error = std::max(c.error, max_abs_diff(permutation_average(a), expected));
    }
    out.push_back(c);
  }
  return out;
}

std::vector<LemmaCheck> check_ab_identities(const LemmaSuiteOptions& opt) {
  std::vector<LemmaCheck> out;
  for (std::size_t n = 1; n <= opt.max_n_ab; ++n) {
    const Matrix a = lemma_matrix_a(n);
    const Matrix b = lemma_matrix_b(n);
    const Matrix id = Matrix::identity(n);
    out.push_back({"A_pinv_eq_I_minus_Bt", n, max_abs_diff(pinv(a), id - b.transpose()), 1e-8});
    out.push_back({"At_I_minus_B_eq_Pperp", n, max_abs_diff(a.transpose() * (id - b), centering_projector(n)), 1e-8});
    const double tr = pinv_symmetric(gram_cols(a)).trace();
    out.push_back({"trace_pinv_AtA_eq_n_minus_H", n, std::fabs(tr - (static_cast<double>(n) - harmonic(n))), 1e-8});
  }
  return out;
}

std::vector<LemmaCheck> check_dilation_spectrum(const LemmaSuiteOptions& opt) {
  std::vector<LemmaCheck> out;
  SplitMix64 rng = Seed{opt.seed, 0, purpose_tag("lemma/dilation")}.stream();
  LemmaCheck c{"dilation_spectrum", 0, 0.0, 1e-9};
  for (std::size_t inst = 0; inst < opt.dilation_instances; ++inst) {
    const std::size_t p = 1 + rng.uniform_int(7);
    const std::size_t r = 1 + rng.uniform_int(7);
    const Matrix a = random_matrix(p, r, rng);
    auto eig = jacobi_eigen_symmetric(dilation(a)).values;
    const auto sv = singular_values(a);
    std::vector<double> expected;
    for (double s : sv) {
      expected.push_back(s);
      expected.push_back(-s);
    }
    expected.resize(p + r, 0.0);
    std::sort(expected.begin(), expected.end());
    std::sort(eig.begin(), eig.end());
    for (std::size_t i = 0; i < eig.size(); ++i) c.error = std::max(c.error, std::fabs(eig[i] - expected[i]));
    c.n = std::max(c.n, p + r);
  }
  out.push_back(c);
  return out;
}

std::vector<LemmaCheck> check_trace_exp_lower_bound(const LemmaSuiteOptions& opt) {
  std::vector<LemmaCheck> out;
  SplitMix64 rng = Seed{opt.seed, 0, purpose_tag("lemma/trace-exp")}.stream();
  LemmaCheck c{"normalized_exp_lower_bound", 0, 0.0, 0.0};
  for (std::size_t inst = 0; inst < opt.dilation_instances; ++inst) {
    const std::size_t p = 1 + rng.uniform_int(6);
    const std::size_t r = 1 + rng.uniform_int(6);
    const Matrix a = random_matrix(p, r, rng);
    const double lambda = 0.05 + 2.0 * rng.uniform01();
    const double lhs = normalized_exp(a, lambda);
    const double rhs = std::exp(lambda * op_norm(a)) / static_cast<double>(p + r);
    // Positive error means the inequality failed.
    c.error = std::max(c.error, (rhs - lhs) / rhs - 1e-12);
  }
  out.push_back(c);
  return out;
}

std::vector<LemmaCheck> run_lemma_suite(const LemmaSuiteOptions& opt) {
  std::vector<LemmaCheck> all;
  for (auto&& part : {check_permutation_average(opt), check_ab_identities(opt), check_dilation_spectrum(opt),
                      check_trace_exp_lower_bound(opt)})
    all.insert(all.end(), part.begin(), part.end());
  return all;
}

}  // namespace exch

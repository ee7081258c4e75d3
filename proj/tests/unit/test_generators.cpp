#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "exch/error.hpp"
#include "exch/exchangeable_gen.hpp"
#include "exch/exhaustive.hpp"
#include "exch/lemmas.hpp"
#include "exch/linalg.hpp"
#include "test_util.hpp"

using namespace exch;
using testutil::random_tensor;

TEST_CASE("mode_permute only reorders slices") {
  SplitMix64 rng(61);
  const auto t = random_tensor({3, 4, 5}, rng);
  const auto p = mode_permute(t, Seed{1, 2, 3});
  CHECK(p == mode_permute(t, Seed{1, 2, 3}));
  auto a = t.data();
  auto b = p.data();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  // Mode-0 slice sums are permuted, not changed.
  auto slice_sums = [](const DenseTensor& x) {
    std::vector<double> s(3, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) s[i / 20] += x[i];
    std::sort(s.begin(), s.end());
    return s;
  };
  const auto sa = slice_sums(t), sb = slice_sums(p);
  for (std::size_t i = 0; i < 3; ++i) CHECK(sa[i] == doctest::Approx(sb[i]).epsilon(1e-14));
}

TEST_CASE("sign, low-information and Bernoulli tensors") {
  const auto s = sign_tensor({6, 5, 4}, Seed{4, 0, 0});
  for (double v : s.data()) CHECK(std::fabs(v) == 1.0);
  const auto l = low_info_tensor({6, 5, 4}, Seed{4, 0, 0});
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 20; ++j) CHECK(l[i * 20 + j] == l[i * 20]);
  const auto b = bernoulli_tensor({50, 40}, 0.3, Seed{5, 0, 0});
  for (double v : b.data()) CHECK((v == 0.0 || v == 1.0));
  CHECK(std::fabs(b.mean() - 0.3) < 0.03);
  CHECK_THROWS_AS(bernoulli_tensor({2}, 1.5, Seed{}), DomainError);
}

TEST_CASE("Cartesian sub-samples and indicator tensors") {
  const auto s = cartesian_subsample({5, 6, 7}, {2, 6, 3}, Seed{7, 0, 0});
  REQUIRE(s.index_sets.size() == 3);
  CHECK(s.index_sets[1] == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  for (const auto& set : s.index_sets) CHECK(std::is_sorted(set.begin(), set.end()));
  CHECK(indicator_tensor(s).sum() == 36.0);
  CHECK_THROWS(cartesian_subsample({5}, {6}, Seed{}));
}

TEST_CASE("AR(1) draws have unit marginal variance and lag-one correlation rho") {
  SplitMix64 rng(62);
  double v = 0.0, c = 0.0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    const auto x = ar1_vector(10, 0.8, rng);
    v += x[9] * x[9];
    c += x[9] * x[8];
  }
  CHECK(std::fabs(v / reps - 1.0) < 0.08);
  CHECK(std::fabs(c / reps - 0.8) < 0.08);
}

TEST_CASE("exhaustive enumeration counts and guards") {
  std::size_t count = 0;
  for_each_permutation(5, [&](const std::vector<std::size_t>&) { ++count; });
  CHECK(count == 120);
  CHECK(guarded_factorial(9) == 362880);
  CHECK_THROWS_AS(guarded_factorial(10), DomainError);
  count = 0;
  for_each_cartesian_sample({4, 3}, {2, 1}, [&](const std::vector<std::vector<std::size_t>>&) { ++count; });
  CHECK(count == 18);
  CHECK(guarded_cartesian_count({4, 3}, {2, 1}) == 18);
  CHECK_THROWS_AS(guarded_cartesian_count({40, 40}, {20, 20}), DomainError);
  // Threshold 0 on a nonnegative statistic counts every outcome.
  CHECK(exhaustive_permutation_tail(4, [](const std::vector<std::size_t>& p) { return double(p[0]); }, 0.0) == 1.0);
  CHECK(exhaustive_permutation_tail(4, [](const std::vector<std::size_t>& p) { return double(p[0]); }, 3.0) == 0.25);
}

TEST_CASE("lemma matrices and identities") {
  const Matrix a3 = lemma_matrix_a(3);
  CHECK(a3(0, 0) == 1.0);
  CHECK(a3(0, 1) == -0.5);
  CHECK(a3(1, 2) == -1.0);
  CHECK(a3(2, 2) == 0.0);
  const Matrix b3 = lemma_matrix_b(3);
  CHECK(b3(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(b3(2, 2) == 1.0);
  CHECK(b3(2, 0) == 0.0);
  LemmaSuiteOptions opt;
  opt.max_n_permutation = 5;
  opt.instances_per_n = 5;
  opt.max_n_ab = 16;
  opt.dilation_instances = 10;
  for (const auto& c : run_lemma_suite(opt)) CHECK_MESSAGE(c.passed(), c.name << " n=" << c.n << " err=" << c.error);
}

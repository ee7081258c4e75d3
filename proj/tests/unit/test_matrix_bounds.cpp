#include <doctest.h>

#include <cmath>

#include "exch/error.hpp"
#include "exch/exhaustive.hpp"
#include "exch/linalg.hpp"
#include "exch/matrix_bounds.hpp"
#include "test_util.hpp"

using namespace exch;
using testutil::random_matrix;

namespace {

MatrixSeq random_seq(std::size_t n, std::size_t p, std::size_t q, SplitMix64& rng) {
  std::vector<Matrix> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(random_matrix(p, q, rng));
  return MatrixSeq(std::move(v));
}

MatrixGrid centered_grid(std::size_t n, std::size_t p, std::size_t q, SplitMix64& rng) {
  MatrixGrid g;
  g.n = n;
  g.rows = p;
  g.cols = q;
  Matrix total(p, q);
  for (std::size_t i = 0; i < n * n; ++i) {
    g.items.push_back(random_matrix(p, q, rng));
    total += g.items.back();
  }
  total *= 1.0 / double(n * n);
  for (auto& a : g.items) a -= total;
  return g;
}

}  // namespace

TEST_CASE("sequence validation and helpers") {
  CHECK_THROWS_AS(MatrixSeq({Matrix(2, 2), Matrix(2, 3)}), DimensionError);
  const MatrixSeq s({Matrix{{1, 0}}, Matrix{{3, 2}}});
  CHECK(s.mean().data() == std::vector<double>{2, 1});
  CHECK(s.permuted({1, 0})[0].data() == std::vector<double>{3, 2});
}

TEST_CASE("centered statistic of a bilinear sum") {
  SplitMix64 rng(51);
  const auto w = random_seq(5, 2, 3, rng);
  const auto x = random_seq(5, 3, 4, rng);
  Matrix z(2, 4);
  for (std::size_t k = 0; k < 5; ++k) z += w[k] * x[k];
  CHECK(max_abs_diff(bilinear(w, x), z) < 1e-13);
  z -= 5.0 * (w.mean() * x.mean());
  CHECK(centered_matrix_statistic(w, x) == doctest::Approx(op_norm(z)));
  CHECK_THROWS_AS(bilinear(w, random_seq(5, 2, 4, rng)), DimensionError);
}

TEST_CASE("scalar data commutes with any weights") {
  SplitMix64 rng(52);
  const auto w = random_seq(6, 3, 2, rng);
  const std::vector<double> xi{0.5, -1, 0.2, 0.9, -0.3, 0.0};
  const auto x = scalar_data_seq(xi, 2);
  const auto pair = scalar_commutativity_pair(w, xi);
  CHECK(commutativity_residual(w, x, pair) < 1e-15);
  CHECK_NOTHROW(validate_pair(w, x, pair));
  CommutativityPair bad = pair;
  bad.x_tilde[0] *= 2.0;
  CHECK_THROWS_AS(validate_pair(w, x, bad), ValidationError);
}

TEST_CASE("generic Hoeffding formula") {
  SplitMix64 rng(53);
  const auto w = random_seq(7, 2, 3, rng);
  double s = 0.0;
  for (const auto& m : w.items) s += std::pow(op_norm(m), 2);
  const double expected = 4.0 * (1.0 + epsilon(7)) * std::sqrt(2.0 * std::log((2.0 + 4.0) / 0.1) * s);
  CHECK(hoeffding_matrix_generic(w, 4, 0.1).threshold == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("commutativity improves on the generic variance scale") {
  SplitMix64 rng(54);
  for (int rep = 0; rep < 20; ++rep) {
    const auto w = random_seq(10, 3, 3, rng);
    std::vector<double> xi(10);
    for (auto& v : xi) v = 2 * rng.uniform01() - 1;
    const auto pair = scalar_commutativity_pair(w, xi);
    const auto g = hoeffding_matrix_generic(w, 3, 0.1);
    const auto c = hoeffding_matrix_commut(w, pair, 0.1);
    CHECK(c.a2 <= g.a2);
  }
}

TEST_CASE("scalar example: w = xi = (1, 0, -1)") {
  const std::vector<double> w{1, 0, -1};
  const std::vector<double> xi{1, 0, -1};
  const auto law = permutation_values(3, [&](const std::vector<std::size_t>& p) {
    double s = 0.0;
    for (std::size_t k = 0; k < 3; ++k) s += w[k] * xi[p[k]];
    return s;
  });
  std::vector<double> sorted = law;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<double>{-2, -1, -1, 1, 1, 2});
  CHECK(exceedance(law, scalar_weighted_bounds(w, xi, 0.1, BoundKind::Hoeffding).threshold) <= 0.1);
  CHECK(exceedance(law, scalar_weighted_bounds(w, xi, 0.1, BoundKind::Bernstein).threshold) <= 0.1);
}

TEST_CASE("weighted bounds validate their inputs") {
  CHECK_THROWS_AS(scalar_weighted_bounds({1, 1}, {}, 0.1, BoundKind::Hoeffding), ValidationError);
  CHECK_THROWS_AS(scalar_weighted_bounds({1, -1}, {1}, 0.1, BoundKind::Bernstein), DimensionError);
  SplitMix64 rng(55);
  const auto w = random_seq(4, 2, 2, rng);
  CHECK_THROWS_AS(matrix_weighted_bounds(w, {0, 0, 0, 0}, 0.1, BoundKind::Hoeffding), ValidationError);
}

TEST_CASE("combinatorial N = 4: exact exceedance at the threshold") {
  SplitMix64 rng(56);
  for (int rep = 0; rep < 10; ++rep) {
    const auto g = centered_grid(4, 2, 3, rng);
    const auto law = permutation_values(4, [&](const std::vector<std::size_t>& p) {
      return op_norm(combinatorial_sum(g, p));
    });
    for (double delta : {0.05, 0.2}) CHECK(exceedance(law, combinatorial_bernstein(g, delta).threshold) <= delta);
  }
}

TEST_CASE("combinatorial embedding reproduces the sum and commutes") {
  SplitMix64 rng(57);
  const auto g = centered_grid(5, 2, 3, rng);
  const auto perm = random_permutation(5, rng);
  const auto emb = combinatorial_embedding(g, perm);
  CHECK(max_abs_diff(bilinear(emb.w, emb.x), combinatorial_sum(g, perm)) < 1e-13);
  CHECK(commutativity_residual(emb.w, emb.x, emb.pair) < 1e-13);
  MatrixGrid bad = g;
  bad.items[0](0, 0) += 1.0;
  CHECK_THROWS_AS(combinatorial_bernstein(bad, 0.1), ValidationError);
}

TEST_CASE("epsilon override tends to the independent constants") {
  SplitMix64 rng(58);
  const auto w = random_seq(8, 2, 2, rng);
  std::vector<double> xi(8);
  for (auto& v : xi) v = 2 * rng.uniform01() - 1;
  const auto pair = scalar_commutativity_pair(w, xi);
  const auto x = scalar_data_seq(xi, 2);
  const auto big = EpsilonPolicy::override_last(1, 1000000);
  const auto zero = EpsilonPolicy::independent();
  const auto h1 = hoeffding_matrix_commut(w, pair, 0.1, big);
  const auto h0 = hoeffding_matrix_commut(w, pair, 0.1, zero);
  CHECK(h1.threshold == doctest::Approx(h0.threshold).epsilon(1e-3));
  const auto b1 = bernstein_matrix(w, x, variance_profile_matrix(w, x, &pair, WidthMode::Standard, big), 0.1);
  const auto b0 = bernstein_matrix(w, x, variance_profile_matrix(w, x, &pair, WidthMode::Standard, zero), 0.1);
  CHECK(b1.threshold == doctest::Approx(b0.threshold).epsilon(1e-3));
}

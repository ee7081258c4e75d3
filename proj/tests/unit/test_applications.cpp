#include <doctest.h>

#include <cmath>

#include "exch/applications.hpp"
#include "exch/error.hpp"
#include "exch/exhaustive.hpp"
#include "exch/linalg.hpp"
#include "exch/rtfa.hpp"
#include "exch/sketching.hpp"
#include "test_util.hpp"

using namespace exch;
using testutil::random_matrix;
using testutil::random_tensor;

TEST_CASE("model quantities") {
  SplitMix64 rng(71);
  const auto w = random_tensor({3, 4}, rng);
  const auto m = make_model(w);
  CHECK(m.mu == doctest::Approx(w.sum()));
  CHECK(m.sigma2 == doctest::Approx(12.0 * inner(w, w) - w.sum() * w.sum()));
  const auto b = max_slice_l1(w);
  double row0 = 0.0;
  for (std::size_t j = 0; j < 4; ++j) row0 += std::fabs(w[j]);
  CHECK(b[0] >= row0 - 1e-15);
  CHECK_THROWS_AS(make_model(w, std::vector<double>{0.0, 0.0}), ValidationError);
}

TEST_CASE("Horvitz-Thompson estimates") {
  SplitMix64 rng(72);
  const auto w = random_tensor({3, 4, 2}, rng);
  const auto m = make_model(w);
  CartesianSample full{{3, 4, 2}, {3, 4, 2}, {{0, 1, 2}, {0, 1, 2, 3}, {0, 1}}};
  CHECK(ht_estimate(m, full) == doctest::Approx(m.mu).epsilon(1e-14));

  DenseTensor single({3, 4, 2});
  single[1 * 8 + 2 * 2 + 1] = 5.0;
  const auto ms = make_model(single);
  CartesianSample s{{3, 4, 2}, {1, 2, 1}, {{1}, {0, 2}, {1}}};
  CHECK(ht_estimate(ms, s) == doctest::Approx(24.0 / 2.0 * 5.0));
}

TEST_CASE("Horvitz-Thompson is exactly unbiased over all Cartesian samples") {
  SplitMix64 rng(73);
  for (const auto& sizes : std::vector<std::vector<std::size_t>>{{1, 2, 2}, {2, 1, 3}, {2, 2, 1}}) {
    const std::vector<std::size_t> dims{3, 3, 3};
    const auto m = make_model(random_tensor(dims, rng));
    double acc = 0.0;
    std::size_t count = 0;
    for_each_cartesian_sample(dims, sizes, [&](const std::vector<std::vector<std::size_t>>& sets) {
      acc += ht_estimate(m, CartesianSample{dims, sizes, sets});
      ++count;
    });
    CHECK(std::fabs(acc / double(count) - m.mu) <= 1e-12 * (1.0 + std::fabs(m.mu)));
  }
  const auto m2 = make_model(random_tensor({2, 2}, rng));
  double acc = 0.0;
  for_each_cartesian_sample({2, 2}, {1, 1}, [&](const std::vector<std::vector<std::size_t>>& sets) {
    acc += ht_estimate(m2, CartesianSample{{2, 2}, {1, 1}, sets});
  });
  CHECK(acc / 4.0 == doctest::Approx(m2.mu).epsilon(1e-14));
}

TEST_CASE("average-effect bound") {
  const auto w = polynomial_weight_tensor({4, 5, 10});
  CHECK(w[w.size() - 1] == 1.0);
  CHECK(w[0] == doctest::Approx(1.0 / (16.0 * 25.0 * 100.0)));
  const auto m = make_model(w);
  const auto none = avg_effect_bound(m, {4, 5, 10}, 0.1);
  CHECK(none.variance_term == 0.0);
  double bmax = 0.0;
  for (std::size_t k = 0; k < 3; ++k) bmax = std::max(bmax, m.slice_bounds[k] * (1 + epsilon(m.dims[k])));
  CHECK(none.threshold == doctest::Approx(2.0 * bmax / 3.0 * std::log(10.0)));
  // The one-mode form agrees with the general form when only the last mode is sub-sampled.
  const auto one = avg_effect_bound(m, {4, 5, 4}, 0.1, true);
  const auto gen = avg_effect_bound(m, {4, 5, 4}, 0.1, false);
  CHECK(one.a2 == doctest::Approx(gen.a2));
  CHECK(one.b == doctest::Approx(gen.b));
  CHECK_THROWS_AS(avg_effect_bound(m, {2, 5, 4}, 0.1, true), DomainError);
  CHECK_THROWS_AS(avg_effect_bound(m, {4, 5, 10}, 0.1, true), DomainError);
  CHECK_THROWS_AS(avg_effect_bound(m, {4, 6, 10}, 0.1), DomainError);
}

TEST_CASE("DST matrix is symmetric and orthogonal") {
  for (std::size_t q : {1, 2, 7, 16}) {
    const Matrix u = dst_matrix(q);
    CHECK(max_abs_diff(u, u.transpose()) < 1e-15);
    CHECK(max_abs_diff(u * u, Matrix::identity(q)) < 1e-12);
  }
}

TEST_CASE("fixed DST designs sum to the identity") {
  std::size_t triples = 0;
  for (std::size_t q : {4, 6, 8, 12, 16, 32, 64})
    for (std::size_t qp = 1; qp <= q; ++qp)
      for (std::size_t n : {1, 2, 3, 4, 8}) {
        if ((qp * n) % q != 0) continue;
        const auto d = build_sketch_design(q, qp, n, SketchScheme::FixedDst, Seed{});
        Matrix s(q, q);
        for (std::size_t k = 0; k < n; ++k) s += d.gram(k);
        CHECK(max_abs_diff(s, Matrix::identity(q)) < 1e-10);
        for (std::size_t k = 0; k < n; ++k)
          CHECK(max_abs_diff(d.block(k).transpose() * d.block(k), d.gram(k)) < 1e-12);
        ++triples;
      }
  CHECK(triples >= 30);
  CHECK_THROWS(build_sketch_design(8, 3, 2, SketchScheme::FixedDst, Seed{}));
}

TEST_CASE("sketched averaging of equal parameters is exact") {
  SplitMix64 rng(74);
  const Matrix theta = random_matrix(8, 2, rng);
  const MatrixSeq thetas(std::vector<Matrix>(4, theta));
  const auto d = build_sketch_design(8, 4, 4, SketchScheme::FixedDst, Seed{});
  CHECK(max_abs_diff(sketch_aggregate(d, thetas), theta) < 1e-12);
  CHECK(sketch_sigma2_infl(thetas, epsilon(4)) == doctest::Approx(0.0));
}

TEST_CASE("q' = q gives D_k = I/N and q'M = q/N") {
  const auto d = build_sketch_design(10, 10, 5, SketchScheme::FixedDst, Seed{});
  CHECK(d.L() == doctest::Approx(0.2));
  CHECK(10.0 * d.M() == doctest::Approx(10.0 / 5.0));
}

TEST_CASE("sketching commutativity pair is valid") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto thetas = conditional_gaussian_thetas(6, 2, 3, 0.9, Seed{s, 0, 1});
    const auto d = build_sketch_design(6, 4, 3, SketchScheme::FixedDst, Seed{});
    const auto w = sketch_weight_seq(d);
    CHECK(commutativity_residual(w, thetas, sketch_commutativity_pair(d, thetas)) < 1e-10);
    CHECK(max_abs_diff(bilinear(w, thetas), sketch_aggregate(d, thetas)) < 1e-12);
  }
}

TEST_CASE("random sketch schemes are unbiased for the identity") {
  for (auto scheme : {SketchScheme::DstSubsampleWo, SketchScheme::DstSubsampleWr, SketchScheme::Gaussian}) {
    Matrix acc(6, 6);
    const int reps = 3000;
    for (int r = 0; r < reps; ++r) {
      const auto d = build_sketch_design(6, 3, 4, scheme, Seed{9, std::uint64_t(r), 0});
      for (std::size_t k = 0; k < 4; ++k) acc += d.gram(k);
    }
    acc *= 1.0 / reps;
    CHECK_MESSAGE(max_abs_diff(acc, Matrix::identity(6)) < 0.1, sketch_scheme_name(scheme));
  }
  CHECK(parse_sketch_scheme("A") == SketchScheme::FixedDst);
  CHECK(parse_sketch_scheme("gaussian") == SketchScheme::Gaussian);
  CHECK_THROWS(parse_sketch_scheme("srft"));
}

TEST_CASE("ridge solver agrees with a dense solve") {
  SplitMix64 rng(75);
  for (auto [n, q] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 9}, {12, 5}}) {
    const Matrix x = random_matrix(n, q, rng);
    const Matrix b = random_matrix(q, 2, rng);
    Matrix a = gram_cols(x);
    for (std::size_t i = 0; i < q; ++i) a(i, i) += 0.5;
    CHECK(max_abs_diff(RidgeSolver(x, 0.5).solve(b), solve_lu(a, b)) < 1e-10);
  }
}

TEST_CASE("stationary target") {
  RtfaConfig cfg;
  cfg.q = 5;
  cfg.n = 4;
  cfg.agents = 3;
  cfg.q_prime = 5;
  SplitMix64 rng(76);
  const auto data = make_rtfa_data(cfg, rng);
  const Matrix target = rtfa_stationary_target(cfg, data);
  // Plug back into θ̄ = (1/N)Σ(X_kᵀX_k+λI)⁻¹(X_kᵀy_k + λθ̄).
  Matrix avg(5, 1);
  Matrix lhs(5, 5), rhs(5, 1);
  for (std::size_t k = 0; k < 3; ++k) {
    Matrix a = gram_cols(data.x[k]);
    for (std::size_t i = 0; i < 5; ++i) a(i, i) += cfg.lambda;
    const Matrix xty = data.x[k].transpose() * data.y[k];
    avg += solve_lu(a, xty + cfg.lambda * target);
    const Matrix ainv = solve_lu(a, Matrix::identity(5));
    lhs += gram_cols(data.x[k]) * ainv;
    rhs += ainv * xty;
  }
  avg *= 1.0 / 3.0;
  CHECK(max_abs_diff(avg, target) < 1e-8);
  CHECK(max_abs_diff(solve_lu(lhs, rhs), target) < 1e-10);
}

TEST_CASE("single agent with the identity sketch converges geometrically") {
  RtfaConfig cfg;
  cfg.q = 5;
  cfg.n = 20;
  cfg.agents = 1;
  cfg.q_prime = 5;
  cfg.noise_var = 0.0;
  cfg.rounds = 40;
  SplitMix64 rng(77);
  const auto data = make_rtfa_data(cfg, rng);
  const auto run = rtfa_run(cfg, data, rng);
  for (std::size_t t = 1; t < run.errors.size(); ++t)
    CHECK(run.errors[t] <= run.errors[t - 1] * (1.0 + 1e-12) + 1e-14);
  CHECK(run.errors.back() < 1e-8 * run.errors.front());
}

TEST_CASE("many small gradient steps approach the exact local update") {
  RtfaConfig cfg;
  cfg.q = 6;
  cfg.n = 10;
  cfg.agents = 1;
  SplitMix64 rng(78);
  const auto data = make_rtfa_data(cfg, rng);
  const RidgeSolver solver(data.x[0], cfg.lambda);
  const Matrix global = random_matrix(6, 1, rng);
  const Matrix exact = rtfa_local_update(cfg, data.x[0], data.y[0], solver, global, Matrix(6, 1));
  cfg.local_steps = 4000;
  cfg.step_size = 0.2;
  const Matrix gd = rtfa_local_update(cfg, data.x[0], data.y[0], solver, global, Matrix(6, 1));
  CHECK(max_abs_diff(gd, exact) < 1e-8);
}

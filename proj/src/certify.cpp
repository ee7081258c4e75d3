#include "exch/certify.hpp"

#include <cmath>

#include "exch/exhaustive.hpp"
#include "exch/linalg.hpp"
#include "exch/matrix_bounds.hpp"
#include "exch/rng.hpp"

namespace exch {

namespace {

double uniform_pm1(SplitMix64& rng) { return 2.0 * rng.uniform01() - 1.0; }

std::vector<double> centered_weights(std::size_t n, SplitMix64& rng) {
  std::vector<double> w(n);
  double mean = 0.0;
  for (auto& v : w) {
    v = rng.normal();
    mean += v;
  }
  mean /= static_cast<double>(n);
  for (auto& v : w) v -= mean;
  return w;
}

Matrix random_matrix(std::size_t p, std::size_t q, SplitMix64& rng) {
  Matrix m(p, q);
  for (auto& v : m.data()) v = rng.normal();
  return m;
}

void certify(std::vector<CertificationResult>& out, const std::string& family, std::size_t instance, std::size_t n,
             const std::vector<double>& law, const BoundReport& rep) {
  out.push_back({family, rep.kind, instance, n, rep.delta, rep.threshold, exceedance(law, rep.threshold)});
}

}  // namespace

std::vector<CertificationResult> certify_small_n(const CertificationOptions& opt) {
  std::vector<CertificationResult> out;
  const std::size_t span = opt.max_n - opt.min_n + 1;
  for (std::size_t inst = 0; inst < opt.instances; ++inst) {
    SplitMix64 rng = Seed{opt.seed, inst, purpose_tag("certify")}.stream();
    const std::size_t n = opt.min_n + inst % span;

    const auto w = centered_weights(n, rng);
    std::vector<double> xi(n);
    for (auto& v : xi) v = uniform_pm1(rng);
    const auto scalar_law = permutation_values(n, [&](const std::vector<std::size_t>& p) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += w[k] * xi[p[k]];
      return s;
    });

    const std::size_t p = 1 + rng.uniform_int(3);
    const std::size_t r = 1 + rng.uniform_int(3);
    std::vector<Matrix> wm;
    for (std::size_t k = 0; k < n; ++k) wm.push_back(random_matrix(p, r, rng));
    MatrixSeq ws(wm);
    const Matrix wbar = ws.mean();
    for (auto& m : ws.items) m -= wbar;
    std::vector<double> xm(n);
    for (auto& v : xm) v = uniform_pm1(rng);
    const auto matrix_law = permutation_values(n, [&](const std::vector<std::size_t>& perm) {
      Matrix s(p, r);
      for (std::size_t k = 0; k < n; ++k) s += ws.items[k] * xm[perm[k]];
      return op_norm(s);
    });

    MatrixGrid grid;
    grid.n = n;
    grid.rows = 1 + rng.uniform_int(3);
    grid.cols = 1 + rng.uniform_int(3);
    Matrix total(grid.rows, grid.cols);
    for (std::size_t i = 0; i < n * n; ++i) {
      Matrix a(grid.rows, grid.cols);
      for (auto& v : a.data()) v = uniform_pm1(rng);
      total += a;
      grid.items.push_back(std::move(a));
    }
    total *= 1.0 / static_cast<double>(n * n);
    for (auto& a : grid.items) a -= total;
    const auto comb_law = permutation_values(n, [&](const std::vector<std::size_t>& perm) {
      return op_norm(combinatorial_sum(grid, perm));
    });

    for (double delta : opt.deltas) {
      for (BoundKind kind : {BoundKind::Hoeffding, BoundKind::Bernstein}) {
        certify(out, "scalar_weighted", inst, n, scalar_law, scalar_weighted_bounds(w, xi, delta, kind));
        certify(out, "matrix_weighted", inst, n, matrix_law, matrix_weighted_bounds(ws, xm, delta, kind));
      }
      certify(out, "combinatorial", inst, n, comb_law, combinatorial_bernstein(grid, delta));
    }
  }
  return out;
}

}  // namespace exch

#include "exch/matrix_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "exch/error.hpp"
#include "exch/linalg.hpp"

namespace exch {

MatrixSeq::MatrixSeq(std::vector<Matrix> m) : items(std::move(m)) {
  if (!items.empty()) {
    rows = items.front().rows();
    cols = items.front().cols();
  }
  validate();
}

void MatrixSeq::validate() const {
  if (items.empty()) throw DimensionError("MatrixSeq: sequence must be nonempty");
  for (const auto& m : items)
    if (m.rows() != rows || m.cols() != cols) throw DimensionError("MatrixSeq: items differ in shape");
}

Matrix MatrixSeq::mean() const {
  validate();
  Matrix m(rows, cols);
  for (const auto& it : items) m += it;
  m *= 1.0 / static_cast<double>(items.size());
  return m;
}

MatrixSeq MatrixSeq::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != items.size()) throw DimensionError("MatrixSeq::permuted: permutation length differs");
  MatrixSeq out;
  out.rows = rows;
  out.cols = cols;
  out.items.reserve(items.size());
  for (std::size_t k : perm) out.items.push_back(items.at(k));
  return out;
}

void MatrixGrid::validate() const {
  if (n == 0) throw DimensionError("MatrixGrid: n must be positive");
  if (items.size() != n * n) throw DimensionError("MatrixGrid: expected n*n items");
  for (const auto& m : items)
    if (m.rows() != rows || m.cols() != cols) throw DimensionError("MatrixGrid: items differ in shape");
}

namespace {

void check_product_shapes(const MatrixSeq& w, const MatrixSeq& x) {
  w.validate();
  x.validate();
  if (w.size() != x.size()) throw DimensionError("weights and data have different lengths");
  if (w.cols != x.rows) throw DimensionError("weight columns differ from data rows");
}

double max_op_norm(const MatrixSeq& s) {
  double m = 0.0;
  for (const auto& it : s.items) m = std::max(m, op_norm(it));
  return m;
}

}  // namespace

Matrix bilinear(const MatrixSeq& w, const MatrixSeq& x) {
  check_product_shapes(w, x);
  Matrix z(w.rows, x.cols);
  for (std::size_t k = 0; k < w.size(); ++k) z += w[k] * x[k];
  return z;
}

double centered_matrix_statistic(const MatrixSeq& w, const MatrixSeq& x) {
  Matrix z = bilinear(w, x);
  z -= static_cast<double>(w.size()) * (w.mean() * x.mean());
  return op_norm(z);
}

double commutativity_residual(const MatrixSeq& w, const MatrixSeq& x, const CommutativityPair& pair) {
  check_product_shapes(w, x);
  pair.x_tilde.validate();
  pair.v.validate();
  const std::size_t n = w.size();
  if (pair.x_tilde.size() != n || pair.v.size() != n)
    throw DimensionError("commutativity pair length differs from the data");
  if (pair.x_tilde.rows != w.rows || pair.x_tilde.cols != pair.v.rows || pair.v.cols != x.cols)
    throw DimensionError("commutativity pair shapes are incompatible with (W, X)");
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wk = w[k].frobenius();
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix d = w[k] * x[j] - pair.x_tilde[j] * pair.v[k];
      worst = std::max(worst, d.frobenius() / (1.0 + wk * x[j].frobenius()));
    }
  }
  return worst;
}

void validate_pair(const MatrixSeq& w, const MatrixSeq& x, const CommutativityPair& pair, double tol) {
  const double res = commutativity_residual(w, x, pair);
  if (!(res <= tol)) {
    throw ValidationError("commutativity condition violated: relative residual " + std::to_string(res));
  }
}

MatrixSeq scalar_data_seq(const std::vector<double>& xi, std::size_t r) {
  std::vector<Matrix> items;
  items.reserve(xi.size());
  for (double v : xi) items.push_back(Matrix::identity(r) * v);
  return MatrixSeq(std::move(items));
}

CommutativityPair scalar_commutativity_pair(const MatrixSeq& w, const std::vector<double>& xi) {
  if (w.size() != xi.size()) throw DimensionError("scalar_commutativity_pair: length mismatch");
  return {scalar_data_seq(xi, w.rows), w};
}

double gram_rows_norm(const MatrixSeq& m) {
  Matrix g(m.rows, m.rows);
  for (const auto& it : m.items) g += gram_rows(it);
  return op_norm(g);
}

double gram_cols_norm(const MatrixSeq& m) {
  Matrix g(m.cols, m.cols);
  for (const auto& it : m.items) g += gram_cols(it);
  return op_norm(g);
}

namespace {

// ‖(1/N)Σ D_kD_kᵀ‖ (or DᵀD when transposed) and max_k‖D_k‖² with D_k = M_k − M̄.
std::pair<double, double> deviation_stats(const MatrixSeq& m, bool transposed) {
  const Matrix mean = m.mean();
  const std::size_t dim = transposed ? m.cols : m.rows;
  Matrix s(dim, dim);
  double worst = 0.0;
  for (const auto& it : m.items) {
    const Matrix d = it - mean;
    s += transposed ? gram_cols(d) : gram_rows(d);
    const double nd = op_norm(d);
    worst = std::max(worst, nd * nd);
  }
  s *= 1.0 / static_cast<double>(m.size());
  return {op_norm(s), worst};
}

}  // namespace

MatrixVarianceProfile variance_profile_matrix(const MatrixSeq& w, const MatrixSeq& x, const CommutativityPair* pair,
                                              WidthMode mode, const EpsilonPolicy& policy) {
  check_product_shapes(w, x);
  if (pair) validate_pair(w, x, *pair);
  MatrixVarianceProfile p;
  p.n = w.size();
  p.mode = mode;
  p.epsilon = policy.eps(0, p.n);
  const auto [sx, mx] = deviation_stats(x, false);
  p.sigma2_X = sx;
  p.sigma2_X_infl = sx + p.epsilon * mx;
  p.gram_W = gram_rows_norm(w);
  for (const auto& it : w.items) {
    const double nw = op_norm(it);
    p.sum_sq_W += nw * nw;
  }
  p.max_norm_X = max_op_norm(x);
  if (mode == WidthMode::Standard) {
    p.w_inf = max_op_norm(w);
  } else {
    for (const auto& wk : w.items)
      for (const auto& xj : x.items) p.w_inf = std::max(p.w_inf, op_norm(wk * xj));
  }
  if (pair) {
    p.has_pair = true;
    const auto [st, mt] = deviation_stats(pair->x_tilde, true);
    p.sigma2_Xtilde = st;
    p.sigma2_Xtilde_infl = st + p.epsilon * mt;
    p.gram_V = gram_cols_norm(pair->v);
    p.max_norm_Xtilde = max_op_norm(pair->x_tilde);
    if (mode == WidthMode::Standard) {
      p.v_inf = max_op_norm(pair->v);
    } else {
      for (const auto& vk : pair->v.items)
        for (const auto& xt : pair->x_tilde.items) p.v_inf = std::max(p.v_inf, op_norm(xt * vk));
    }
  }
  return p;
}

BoundReport hoeffding_matrix_generic(const MatrixSeq& w, std::size_t r, double delta, const EpsilonPolicy& policy) {
  w.validate();
  const double eps = policy.eps(0, w.size());
  double s = 0.0;
  for (const auto& it : w.items) {
    const double nw = op_norm(it);
    s += nw * nw;
  }
  const double c = 4.0 * (1.0 + eps);
  auto rep = make_report("matrix_hoeffding_generic", c * c * s, 0.0, static_cast<double>(w.rows + r), delta);
  rep.epsilons = {eps};
  rep.extras["sum_sq_W"] = s;
  return rep;
}

BoundReport hoeffding_matrix_commut(const MatrixSeq& w, const CommutativityPair& pair, double delta,
                                    const EpsilonPolicy& policy) {
  w.validate();
  pair.v.validate();
  if (pair.v.size() != w.size()) throw DimensionError("hoeffding_matrix_commut: V length differs from W");
  const double eps = policy.eps(0, w.size());
  const double gw = gram_rows_norm(w);
  const double gv = gram_cols_norm(pair.v);
  const double g = std::max(gw, gv);
  auto rep = make_report("matrix_hoeffding_commut", 16.0 * (1.0 + eps) * g, 0.0,
                         static_cast<double>(w.rows + pair.v.cols), delta);
  rep.epsilons = {eps};
  rep.extras["gram_W"] = gw;
  rep.extras["gram_V"] = gv;
  rep.contracts["x_tilde_norm_le_1"] = max_op_norm(pair.x_tilde) <= 1.0 + 1e-12;
  return rep;
}

BoundReport bernstein_matrix(const MatrixSeq& w, const MatrixSeq& x, const MatrixVarianceProfile& p, double delta) {
  check_product_shapes(w, x);
  if (w.size() < 2) throw DomainError("bernstein_matrix: the Bernstein bound needs N >= 2");
  if (!p.has_pair) throw ValidationError("bernstein_matrix: a commutativity pair is required");
  if (p.n != w.size()) throw DimensionError("bernstein_matrix: profile was computed for a different N");
  const double e1 = 1.0 + p.epsilon;
  const double g = std::max(p.sigma2_X_infl * p.gram_W, p.sigma2_Xtilde_infl * p.gram_V);
  const double width = std::min(p.w_inf, p.v_inf);
  auto rep = make_report(p.mode == WidthMode::Strengthened ? "matrix_bernstein_strengthened" : "matrix_bernstein",
                         e1 * e1 * g, 2.0 / 3.0 * width * e1, static_cast<double>(w.rows + x.cols), delta);
  rep.epsilons = {p.epsilon};
  rep.lambda_window = width > 0.0 ? 3.0 / (2.0 * width * e1) : rep.lambda_window;
  rep.lambda_opt_in_window = !rep.lambda_opt || *rep.lambda_opt <= rep.lambda_window;
  rep.extras["sigma2_X_infl"] = p.sigma2_X_infl;
  rep.extras["sigma2_Xtilde_infl"] = p.sigma2_Xtilde_infl;
  rep.extras["gram_W"] = p.gram_W;
  rep.extras["gram_V"] = p.gram_V;
  rep.extras["w_inf"] = p.w_inf;
  rep.extras["v_inf"] = p.v_inf;
  rep.contracts["x_norm_le_1"] = p.max_norm_X <= 1.0 + 1e-12;
  rep.contracts["x_tilde_norm_le_1"] = p.max_norm_Xtilde <= 1.0 + 1e-12;
  return rep;
}

namespace {

// σ̃²_ξ = (1/N)Σ(ξ_k − ξ̄)² + ε·max_k(ξ_k − ξ̄)².
double scalar_sigma2_infl(const std::vector<double>& xi, double eps) {
  double mean = 0.0;
  for (double v : xi) mean += v;
  mean /= static_cast<double>(xi.size());
  double s = 0.0;
  double m = 0.0;
  for (double v : xi) {
    const double d = (v - mean) * (v - mean);
    s += d;
    m = std::max(m, d);
  }
  return s / static_cast<double>(xi.size()) + eps * m;
}

}  // namespace

BoundReport scalar_weighted_bounds(const std::vector<double>& w, const std::vector<double>& xi, double delta,
                                   BoundKind kind, const EpsilonPolicy& policy) {
  if (w.empty()) throw DimensionError("scalar_weighted_bounds: empty weights");
  if (kind == BoundKind::Bernstein && xi.size() != w.size())
    throw DimensionError("scalar_weighted_bounds: weights and data lengths differ");
  double sum = 0.0;
  double l1 = 0.0;
  double sq = 0.0;
  double inf = 0.0;
  for (double v : w) {
    sum += v;
    l1 += std::fabs(v);
    sq += v * v;
    inf = std::max(inf, std::fabs(v));
  }
  if (std::fabs(sum / static_cast<double>(w.size())) > 1e-12 * (1.0 + l1))
    throw ValidationError("scalar_weighted_bounds: weights must have mean zero");
  const double eps = policy.eps(0, w.size());
  BoundReport rep;
  if (kind == BoundKind::Hoeffding) {
    rep = make_report("scalar_hoeffding", (1.0 + eps) * sq, 0.0, 1.0, delta);
  } else {
    const double s2 = scalar_sigma2_infl(xi, eps);
    rep = make_report("scalar_bernstein", (1.0 + eps) * s2 * sq, 2.0 / 3.0 * inf * (1.0 + eps), 1.0, delta);
    rep.extras["sigma2_xi_infl"] = s2;
    if (inf > 0.0) rep.lambda_window = 3.0 / (2.0 * inf * (1.0 + eps));
    rep.lambda_opt_in_window = !rep.lambda_opt || *rep.lambda_opt <= rep.lambda_window;
  }
  rep.epsilons = {eps};
  return rep;
}

BoundReport matrix_weighted_bounds(const MatrixSeq& w, const std::vector<double>& xi, double delta, BoundKind kind,
                                   std::optional<double> L, const EpsilonPolicy& policy) {
  w.validate();
  if (kind == BoundKind::Bernstein && xi.size() != w.size())
    throw DimensionError("matrix_weighted_bounds: weights and data lengths differ");
  double scale = 0.0;
  for (const auto& it : w.items) scale += it.frobenius();
  if (op_norm(w.mean()) > 1e-12 * (1.0 + scale)) throw ValidationError("matrix_weighted_bounds: weights must have mean zero");
  const double eps = policy.eps(0, w.size());
  const double sigma2_w = std::max(gram_rows_norm(w), gram_cols_norm(w));
  const double dim = static_cast<double>(w.rows + w.cols);
  BoundReport rep;
  if (kind == BoundKind::Hoeffding) {
    rep = make_report("matrix_weighted_hoeffding", 16.0 * (1.0 + eps) * sigma2_w, 0.0, dim, delta);
  } else {
    const double lw = L ? *L : max_op_norm(w);
    if (L && *L + 1e-12 < max_op_norm(w)) throw ValidationError("matrix_weighted_bounds: L is below max ||W_k||");
    const double s2 = scalar_sigma2_infl(xi, eps);
    rep = make_report("matrix_weighted_bernstein", (1.0 + eps) * s2 * sigma2_w, 2.0 * lw / 3.0 * (1.0 + eps), dim,
                      delta);
    rep.extras["sigma2_xi_infl"] = s2;
    rep.extras["L"] = lw;
    if (lw > 0.0) rep.lambda_window = 3.0 / (2.0 * lw * (1.0 + eps));
    rep.lambda_opt_in_window = !rep.lambda_opt || *rep.lambda_opt <= rep.lambda_window;
  }
  rep.extras["sigma2_W"] = sigma2_w;
  rep.epsilons = {eps};
  return rep;
}

BoundReport combinatorial_bernstein(const MatrixGrid& a, double delta, const EpsilonPolicy& policy) {
  a.validate();
  Matrix total(a.rows, a.cols);
  Matrix grr(a.rows, a.rows);
  Matrix gcc(a.cols, a.cols);
  double scale = 0.0;
  double R = 0.0;
  for (const auto& it : a.items) {
    total += it;
    grr += gram_rows(it);
    gcc += gram_cols(it);
    scale += it.frobenius();
    R = std::max(R, op_norm(it));
  }
  if (total.max_abs() > 1e-10 * (1.0 + scale)) throw ValidationError("combinatorial_bernstein: array must sum to zero");
  const double eps = policy.eps(0, a.n);
  const double nn = static_cast<double>(a.n);
  const double sigma2 = std::max(op_norm(grr), op_norm(gcc));
  const double infl = 1.0 / nn + eps * (1.0 - 1.0 / nn);
  const double e1 = 1.0 + eps;
  auto rep = make_report("combinatorial_bernstein", e1 * e1 * sigma2 * infl, 2.0 * e1 * R / 3.0,
                         static_cast<double>(a.rows + a.cols), delta);
  rep.epsilons = {eps};
  rep.extras["sigma2"] = sigma2;
  rep.extras["R"] = R;
  if (R > 0.0) rep.lambda_window = 3.0 / (2.0 * e1 * R);
  rep.lambda_opt_in_window = !rep.lambda_opt || *rep.lambda_opt <= rep.lambda_window;
  return rep;
}

Matrix combinatorial_sum(const MatrixGrid& a, const std::vector<std::size_t>& perm) {
  if (perm.size() != a.n) throw DimensionError("combinatorial_sum: permutation length differs from n");
  Matrix s(a.rows, a.cols);
  for (std::size_t k = 0; k < a.n; ++k) s += a.at(k, perm[k]);
  return s;
}

CombinatorialEmbedding combinatorial_embedding(const MatrixGrid& a, const std::vector<std::size_t>& perm) {
  a.validate();
  if (perm.size() != a.n) throw DimensionError("combinatorial_embedding: permutation length differs from n");
  const std::size_t n = a.n;
  const std::size_t m = a.rows;
  const std::size_t c = a.cols;
  std::vector<Matrix> w;
  std::vector<Matrix> v;
  std::vector<Matrix> x;
  std::vector<Matrix> xt;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix wk(m, n * c);
    Matrix vk(n * m, c);
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix& akj = a.at(k, j);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < c; ++l) {
          wk(i, j * c + l) = akj(i, l);
          vk(j * m + i, l) = akj(i, l);
        }
    }
    w.push_back(std::move(wk));
    v.push_back(std::move(vk));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Matrix e(n, 1);
    e(perm[j], 0) = 1.0;
    x.push_back(kron(e, Matrix::identity(c)));
    xt.push_back(kron(e.transpose(), Matrix::identity(m)));
  }
  return {MatrixSeq(std::move(w)), MatrixSeq(std::move(x)), {MatrixSeq(std::move(xt)), MatrixSeq(std::move(v))}};
}

}  // namespace exch

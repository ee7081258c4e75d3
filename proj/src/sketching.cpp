#include "exch/sketching.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "exch/error.hpp"
#include "exch/kernels.hpp"
#include "exch/linalg.hpp"

namespace exch {

SketchScheme parse_sketch_scheme(std::string_view name) {
  if (name == "fixed_dst" || name == "A") return SketchScheme::FixedDst;
  if (name == "dst_subsample_wo" || name == "B") return SketchScheme::DstSubsampleWo;
  if (name == "dst_subsample_wr" || name == "C") return SketchScheme::DstSubsampleWr;
  if (name == "gaussian" || name == "D") return SketchScheme::Gaussian;
  throw ValidationError("unknown sketch scheme '" + std::string(name) + "'");
}

std::string_view sketch_scheme_name(SketchScheme s) {
  switch (s) {
    case SketchScheme::FixedDst: return "fixed_dst";
    case SketchScheme::DstSubsampleWo: return "dst_subsample_wo";
    case SketchScheme::DstSubsampleWr: return "dst_subsample_wr";
    case SketchScheme::Gaussian: return "gaussian";
  }
  return "unknown";
}

Matrix dst_matrix(std::size_t q) {
  Matrix u(q, q);
  const double c = std::sqrt(2.0 / static_cast<double>(q + 1));
  const double w = std::numbers::pi / static_cast<double>(q + 1);
  for (std::size_t i = 1; i <= q; ++i)
    for (std::size_t j = 1; j <= q; ++j) {
      // Reduce i·j modulo 2(q+1) before the sine so large arguments keep full precision.
      const std::size_t m = (i * j) % (2 * (q + 1));
      u(i - 1, j - 1) = c * std::sin(w * static_cast<double>(m));
    }
  return u;
}

Matrix SketchDesign::block(std::size_t k) const {
  if (k >= n) throw DimensionError("SketchDesign::block: index out of range");
  if (scheme == SketchScheme::Gaussian) return u_blocks[k];
  if (scheme != SketchScheme::FixedDst) throw ValidationError("SketchDesign::block: random DST sub-sampling keeps only U_k^T U_k");
  const double s = std::sqrt(static_cast<double>(q) / static_cast<double>(q_prime * n));
  Matrix b(q_prime, q);
  for (std::size_t r = 0; r < q_prime; ++r) {
    const std::size_t row = (k * q_prime + r) % q;
    for (std::size_t j = 0; j < q; ++j) b(r, j) = s * dst(row, j);
  }
  return b;
}

Matrix SketchDesign::gram(std::size_t k) const {
  if (k >= n) throw DimensionError("SketchDesign::gram: index out of range");
  if (scheme == SketchScheme::Gaussian) return gram_cols(u_blocks[k]);
  Matrix g(q, q);
  for (std::size_t l = 0; l < q; ++l) {
    const double d = d_blocks[k][l];
    if (d == 0.0) continue;
    // u_l is row l of U (and column l, U being symmetric).
    for (std::size_t i = 0; i < q; ++i) kernels::axpy(d * dst(l, i), dst.row(l), g.row(i));
  }
  return g;
}

double SketchDesign::L() const {
  double m = 0.0;
  for (const auto& d : d_blocks)
    for (double v : d) m = std::max(m, std::fabs(v));
  return m;
}

double SketchDesign::M() const {
  if (d_blocks.empty()) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    double s = 0.0;
    for (const auto& d : d_blocks) s += d[i] * d[i];
    m = std::max(m, s);
  }
  return m;
}

SketchDesign build_sketch_design(std::size_t q, std::size_t q_prime, std::size_t n, SketchScheme scheme,
                                 SplitMix64& rng) {
  if (q == 0 || q_prime == 0 || n == 0) throw DomainError("build_sketch_design: sizes must be positive");
  if (q_prime > q) throw DomainError("build_sketch_design: q' must not exceed q");
  SketchDesign d;
  d.q = q;
  d.q_prime = q_prime;
  d.n = n;
  d.scheme = scheme;
  const double unit = static_cast<double>(q) / static_cast<double>(q_prime * n);
  if (scheme == SketchScheme::Gaussian) {
    const double sd = 1.0 / std::sqrt(static_cast<double>(q_prime * n));
    for (std::size_t k = 0; k < n; ++k) {
      Matrix u(q_prime, q);
      for (auto& v : u.data()) v = sd * rng.normal();
      d.u_blocks.push_back(std::move(u));
    }
    return d;
  }
  d.dst = dst_matrix(q);
  d.d_blocks.assign(n, std::vector<double>(q, 0.0));
  switch (scheme) {
    case SketchScheme::FixedDst:
      if ((q_prime * n) % q != 0) {
        throw DomainError("build_sketch_design: fixed DST design needs q'*N to be a multiple of q");
      }
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < q_prime; ++r) d.d_blocks[k][(k * q_prime + r) % q] += unit;
      break;
    case SketchScheme::DstSubsampleWo: {
      const double p = static_cast<double>(q_prime) / static_cast<double>(q);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < q; ++i) d.d_blocks[k][i] = rng.bernoulli(p) ? unit : 0.0;
      break;
    }
    case SketchScheme::DstSubsampleWr: {
      const double p = static_cast<double>(q_prime) / static_cast<double>(q);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < q; ++l) {
          const std::size_t i = rng.uniform_int(q);
          if (rng.bernoulli(p)) d.d_blocks[k][i] += unit;
        }
      break;
    }
    case SketchScheme::Gaussian:
      break;
  }
  return d;
}

SketchDesign build_sketch_design(std::size_t q, std::size_t q_prime, std::size_t n, SketchScheme scheme,
                                 const Seed& seed) {
  auto rng = seed.stream();
  return build_sketch_design(q, q_prime, n, scheme, rng);
}

Matrix sketch_aggregate(const SketchDesign& design, const MatrixSeq& thetas) {
  thetas.validate();
  if (thetas.size() != design.n || thetas.rows != design.q)
    throw DimensionError("sketch_aggregate: parameters do not match the design");
  const std::size_t q = design.q;
  const std::size_t r = thetas.cols;
  Matrix out(q, r);
  if (design.scheme == SketchScheme::Gaussian) {
    for (std::size_t k = 0; k < design.n; ++k) {
      const Matrix& u = design.u_blocks[k];
      const Matrix ut = u * thetas[k];
      out += u.transpose() * ut;
    }
    return out;
  }
  // Σ_k U·diag(d_k)·U·θ_k = U·(Σ_k diag(d_k)·(U·θ_k)).
  Matrix acc(q, r);
  for (std::size_t k = 0; k < design.n; ++k) {
    const Matrix ut = design.dst * thetas[k];
    const auto& d = design.d_blocks[k];
    for (std::size_t i = 0; i < q; ++i)
      if (d[i] != 0.0) kernels::axpy(d[i], ut.row(i), acc.row(i));
  }
  return design.dst.transpose() * acc;
}

double sketch_sigma2_infl(const MatrixSeq& thetas, double eps) {
  const Matrix mean = thetas.mean();
  double s = 0.0;
  double m = 0.0;
  for (const auto& t : thetas.items) {
    const double f = (t - mean).frobenius_sq();
    s += f;
    m = std::max(m, f);
  }
  return s / static_cast<double>(thetas.size()) + eps * m;
}

BoundReport sketching_bound(const SketchDesign& design, const MatrixSeq& thetas, double delta,
                            const EpsilonPolicy& policy) {
  if (design.scheme != SketchScheme::FixedDst)
    throw ValidationError("sketching_bound: the bound applies to fixed DST designs only");
  thetas.validate();
  if (thetas.size() != design.n || thetas.rows != design.q)
    throw DimensionError("sketching_bound: parameters do not match the design");
  const double eps = policy.eps(0, design.n);
  const double s2 = sketch_sigma2_infl(thetas, eps);
  const double L = design.L();
  const double M = design.M();
  const double qp = static_cast<double>(design.q_prime);
  auto rep = make_report("sketching_fixed_dst", s2 * (1.0 + eps) * qp * M, 2.0 * L / 3.0 * (1.0 + eps),
                         static_cast<double>(design.q + thetas.cols), delta);
  rep.epsilons = {eps};
  rep.extras["sigma2_theta_infl"] = s2;
  rep.extras["L"] = L;
  rep.extras["M"] = M;
  double worst = 0.0;
  for (const auto& t : thetas.items) worst = std::max(worst, t.frobenius());
  rep.contracts["theta_frobenius_le_1"] = worst <= 1.0 + 1e-12;
  return rep;
}

MatrixSeq sketch_weight_seq(const SketchDesign& design) {
  std::vector<Matrix> w;
  for (std::size_t k = 0; k < design.n; ++k) w.push_back(design.gram(k));
  return MatrixSeq(std::move(w));
}

CommutativityPair sketch_commutativity_pair(const SketchDesign& design, const MatrixSeq& thetas) {
  if (design.scheme == SketchScheme::Gaussian)
    throw ValidationError("sketch_commutativity_pair: needs a diagonal DST design");
  thetas.validate();
  const std::size_t q = design.q;
  const std::size_t r = thetas.cols;
  const Matrix& U = design.dst;
  std::vector<Matrix> xt;
  for (const auto& th : thetas.items) {
    const Matrix ut = U * th;  // row l is u_lᵀθ
    Matrix row(1, q * r);
    for (std::size_t l = 0; l < q; ++l)
      for (std::size_t c = 0; c < r; ++c) row(0, l * r + c) = ut(l, c);
    xt.push_back(kron(Matrix::identity(q), row));
  }
  std::vector<Matrix> v;
  for (std::size_t k = 0; k < design.n; ++k) {
    Matrix vk(q * q * r, r);
    const auto& d = design.d_blocks[k];
    for (std::size_t m = 0; m < q; ++m)
      for (std::size_t l = 0; l < q; ++l) {
        const double val = d[l] * U(l, m);
        for (std::size_t c = 0; c < r; ++c) vk(m * q * r + l * r + c, c) = val;
      }
    v.push_back(std::move(vk));
  }
  return {MatrixSeq(std::move(xt)), MatrixSeq(std::move(v))};
}

}  // namespace exch

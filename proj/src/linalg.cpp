#include "exch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "exch/error.hpp"
#include "exch/kernels.hpp"
#include "exch/rng.hpp"

namespace exch {

Matrix cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("cholesky: matrix is not square");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j) - kernels::dot(l.row(j).first(j), l.row(j).first(j));
    if (!(d > 0.0)) throw SolverError("cholesky: matrix is not positive definite");
    d = std::sqrt(d);
    l(j, j) = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      l(i, j) = (a(i, j) - kernels::dot(l.row(i).first(j), l.row(j).first(j))) / d;
    }
  }
  return l;
}

Matrix cholesky_solve(const Matrix& l, const Matrix& b) {
  const std::size_t n = l.rows();
  if (b.rows() != n) throw DimensionError("cholesky_solve: right-hand side has wrong row count");
  const std::size_t m = b.cols();
  Matrix x = b;
  // Forward substitution L·Y = B, row by row.
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = l(i, k);
      if (lik != 0.0) kernels::axpy(-lik, x.row(k), xi);
    }
    kernels::scale(1.0 / l(i, i), xi);
  }
  // Back substitution Lᵀ·X = Y.
  for (std::size_t ii = n; ii-- > 0;) {
    auto xi = x.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double lki = l(k, ii);
      if (lki != 0.0) kernels::axpy(-lki, x.row(k), xi);
    }
    kernels::scale(1.0 / l(ii, ii), xi);
  }
  (void)m;
  return x;
}

Matrix solve_spd(const Matrix& a, const Matrix& b) { return cholesky_solve(cholesky(a), b); }

Matrix solve_lu(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) throw DimensionError("solve_lu: matrix is not square");
  if (b.rows() != a.rows()) throw DimensionError("solve_lu: right-hand side has wrong row count");
  const std::size_t n = a.rows();
  Matrix lu = a;
  Matrix x = b;
  double scale = lu.max_abs();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(lu(i, k)) > std::fabs(lu(piv, k))) piv = i;
    if (!(std::fabs(lu(piv, k)) > 1e-14 * scale)) throw SolverError("solve_lu: matrix is singular");
    if (piv != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(piv).begin());
      std::swap_ranges(x.row(k).begin(), x.row(k).end(), x.row(piv).begin());
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      lu(i, k) = 0.0;
      kernels::axpy(-f, lu.row(k).subspan(k + 1), lu.row(i).subspan(k + 1));
      kernels::axpy(-f, x.row(k), x.row(i));
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    auto xi = x.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double u = lu(ii, k);
      if (u != 0.0) kernels::axpy(-u, x.row(k), xi);
    }
    kernels::scale(1.0 / lu(ii, ii), xi);
  }
  return x;
}

SymmetricEigen jacobi_eigen_symmetric(const Matrix& a_in, double tol, int max_sweeps) {
  if (a_in.rows() != a_in.cols()) throw DimensionError("jacobi_eigen_symmetric: matrix is not square");
  const std::size_t n = a_in.rows();
  Matrix a = a_in;
  Matrix v = Matrix::identity(n);
  const double fro = std::max(a.frobenius(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= tol * fro) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

std::vector<double> singular_values(const Matrix& a_in, double tol, int max_sweeps) {
  // Work on rows of the wider orientation so each rotation touches contiguous memory.
  Matrix a = a_in.rows() <= a_in.cols() ? a_in : a_in.transpose();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        auto rp = a.row(p);
        auto rq = a.row(q);
        const double alpha = kernels::dot(rp, rp);
        const double beta = kernels::dot(rq, rq);
        const double gamma = kernels::dot(rp, rq);
        if (std::fabs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < n; ++k) {
          const double x = rp[k];
          const double y = rq[k];
          rp[k] = c * x - s * y;
          rq[k] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(m);
  for (std::size_t i = 0; i < m; ++i) sv[i] = std::sqrt(kernels::sum_sq(a.row(i)));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

PowerIterationResult power_iteration_psd(const Matrix& g, double rel_tol, std::size_t max_iter) {
  const std::size_t n = g.rows();
  PowerIterationResult res;
  if (n == 0) {
    res.converged = true;
    return res;
  }
  if (n == 1) {
    res.value = std::max(0.0, g(0, 0));
    res.converged = true;
    return res;
  }
  SplitMix64 rng(0x5eed0f0e11a7ULL);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform01() - 0.5;
  std::vector<double> w(n);
  auto normalize = [](std::vector<double>& x) {
    const double nrm = std::sqrt(kernels::sum_sq(x));
    if (nrm > 0.0) kernels::scale(1.0 / nrm, x);
    return nrm;
  };
  normalize(v);
  const double scale = g.max_abs();
  if (scale == 0.0) {
    res.converged = true;
    return res;
  }
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) w[i] = kernels::dot(g.row(i), v);
    const double mu = kernels::dot(v, w);
    // Residual ‖Gv − μv‖ relative to μ.
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = w[i] - mu * v[i];
      r2 += d * d;
    }
    res.value = mu;
    res.iterations = it;
    if (mu <= 1e-300 * scale) {
      // Start vector fell into the null space; the result is not trustworthy.
      return res;
    }
    if (std::sqrt(r2) <= rel_tol * mu) {
      res.converged = true;
      return res;
    }
    if (normalize(w) == 0.0) return res;
    std::swap(v, w);
  }
  return res;
}

double op_norm(const Matrix& a) {
  if (a.empty()) return 0.0;
  if (a.size() == 1) return std::fabs(a.data()[0]);
  if (a.max_abs() == 0.0) return 0.0;
  if (a.rows() == 1 || a.cols() == 1) return a.frobenius();
  const Matrix g = a.rows() <= a.cols() ? gram_rows(a) : gram_cols(a);
  const auto res = power_iteration_psd(g);
  if (res.converged) return std::sqrt(std::max(0.0, res.value));
  return singular_values(a).front();
}

Matrix dilation(const Matrix& a) {
  const std::size_t p = a.rows();
  const std::size_t r = a.cols();
  Matrix d(p + r, p + r);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      d(i, p + j) = a(i, j);
      d(p + j, i) = a(i, j);
    }
  return d;
}

double normalized_exp(const Matrix& a, double lambda) {
  const std::size_t dim = a.rows() + a.cols();
  if (dim == 0) throw DimensionError("normalized_exp: empty matrix");
  const auto eig = jacobi_eigen_symmetric(dilation(a));
  double s = 0.0;
  for (double ev : eig.values) s += std::exp(lambda * ev);
  return s / static_cast<double>(dim);
}

Matrix pinv_symmetric(const Matrix& a, double rel_tol) {
  const auto eig = jacobi_eigen_symmetric(a);
  const std::size_t n = a.rows();
  double emax = 0.0;
  for (double e : eig.values) emax = std::max(emax, std::fabs(e));
  Matrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double e = eig.values[j];
    if (std::fabs(e) <= rel_tol * emax) continue;
    const double inv = 1.0 / e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) out(i, k) += inv * eig.vectors(i, j) * eig.vectors(k, j);
  }
  return out;
}

Matrix pinv(const Matrix& a, double rel_tol) { return pinv_symmetric(gram_cols(a), rel_tol) * a.transpose(); }

}  // namespace exch

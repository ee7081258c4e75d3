#include "exch/tensor.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "exch/error.hpp"
#include "exch/kernels.hpp"

namespace exch {

std::size_t checked_volume(std::span<const std::size_t> dims) {
  constexpr std::size_t kCap = std::size_t{1} << 31;
  std::size_t v = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionError("tensor dimensions must be positive");
    if (v > kCap / d) throw DimensionError("tensor has more than 2^31 entries");
    v *= d;
  }
  return v;
}

DenseTensor::DenseTensor() : data_(1, 0.0) {}

DenseTensor::DenseTensor(std::vector<std::size_t> dims, double fill)
    : dims_(std::move(dims)), data_(checked_volume(dims_), fill) {}

DenseTensor::DenseTensor(std::vector<std::size_t> dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (data_.size() != checked_volume(dims_)) {
    throw DimensionError("tensor data length " + std::to_string(data_.size()) +
                         " does not match the product of dims");
  }
}

DenseTensor DenseTensor::scalar(double v) { return DenseTensor({}, std::vector<double>{v}); }

DenseTensor DenseTensor::vector(std::vector<double> v) {
  const std::size_t n = v.size();
  return DenseTensor({n}, std::move(v));
}

DenseTensor DenseTensor::from_matrix(const Matrix& m) { return DenseTensor({m.rows(), m.cols()}, m.data()); }

std::size_t DenseTensor::offset(std::span<const std::size_t> idx) const {
  if (idx.size() != dims_.size()) throw DimensionError("tensor index has wrong arity");
  std::size_t off = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (idx[k] >= dims_[k]) throw DimensionError("tensor index out of range");
    off = off * dims_[k] + idx[k];
  }
  return off;
}

double& DenseTensor::at(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
double DenseTensor::at(std::span<const std::size_t> idx) const { return data_[offset(idx)]; }

double DenseTensor::sum() const { return kernels::sum(data_); }
double DenseTensor::mean() const { return sum() / static_cast<double>(data_.size()); }

DenseTensor& DenseTensor::operator+=(const DenseTensor& o) {
  if (dims_ != o.dims_) throw DimensionError("tensor +=: dims mismatch");
  kernels::axpy(1.0, o.data_, data_);
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& o) {
  if (dims_ != o.dims_) throw DimensionError("tensor -=: dims mismatch");
  kernels::axpy(-1.0, o.data_, data_);
  return *this;
}

DenseTensor& DenseTensor::operator*=(double c) {
  kernels::scale(c, data_);
  return *this;
}

DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
DenseTensor operator*(DenseTensor a, double c) { return a *= c; }
DenseTensor operator*(double c, DenseTensor a) { return a *= c; }

namespace {

// Row-major tensor viewed as (outer, N_k, inner) around mode k.
struct ModeSplit {
  std::size_t outer = 1;
  std::size_t nk = 1;
  std::size_t inner = 1;
};

ModeSplit split(const std::vector<std::size_t>& dims, std::size_t k) {
  if (k >= dims.size()) throw DimensionError("mode index " + std::to_string(k) + " out of range");
  ModeSplit s;
  for (std::size_t l = 0; l < k; ++l) s.outer *= dims[l];
  s.nk = dims[k];
  for (std::size_t l = k + 1; l < dims.size(); ++l) s.inner *= dims[l];
  return s;
}

}  // namespace

DenseTensor mode_product(const DenseTensor& t, const Matrix& b, std::size_t k) {
  const ModeSplit s = split(t.dims(), k);
  if (b.cols() != s.nk) {
    throw DimensionError("mode_product: matrix has " + std::to_string(b.cols()) + " columns, mode " +
                         std::to_string(k) + " has size " + std::to_string(s.nk));
  }
  auto out_dims = t.dims();
  out_dims[k] = b.rows();
  DenseTensor out(out_dims);
  const std::size_t m = b.rows();
  // Each outer slab is an (N_k × inner) matrix; the product is B · slab.
  for (std::size_t o = 0; o < s.outer; ++o) {
    kernels::gemm_acc(m, s.nk, s.inner, b.data().data(), t.data().data() + o * s.nk * s.inner,
                      out.data().data() + o * m * s.inner);
  }
  return out;
}

DenseTensor average_last_mode(const DenseTensor& t) {
  if (t.order() == 0) throw DimensionError("average_last_mode: scalar tensor has no modes");
  const std::size_t n = t.dims().back();
  std::vector<std::size_t> dims(t.dims().begin(), t.dims().end() - 1);
  DenseTensor out(dims);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = kernels::sum({t.data().data() + i * n, n}) * inv;
  return out;
}

ModeAverageLadder mode_average_ladder(const DenseTensor& t) {
  ModeAverageLadder ladder;
  ladder.source_dims = t.dims();
  const std::size_t K = t.order();
  ladder.levels.resize(K + 1);
  ladder.levels[K] = t;
  for (std::size_t k = K; k > 0; --k) ladder.levels[k - 1] = average_last_mode(ladder.levels[k]);
  return ladder;
}

DenseTensor broadcast_trailing(const DenseTensor& t, std::span<const std::size_t> full_dims) {
  const std::size_t j = t.order();
  if (j > full_dims.size()) throw DimensionError("broadcast_trailing: source has more modes than target");
  for (std::size_t l = 0; l < j; ++l)
    if (t.dims()[l] != full_dims[l]) throw DimensionError("broadcast_trailing: leading dims differ");
  std::size_t rep = 1;
  for (std::size_t l = j; l < full_dims.size(); ++l) rep *= full_dims[l];
  DenseTensor out(std::vector<std::size_t>(full_dims.begin(), full_dims.end()));
  for (std::size_t i = 0; i < t.size(); ++i) std::fill_n(out.data().begin() + i * rep, rep, t[i]);
  return out;
}

DenseTensor ModeAverageLadder::broadcast(std::size_t k) const { return broadcast_trailing(levels.at(k), source_dims); }

DenseTensor center_mode(const DenseTensor& t, std::size_t k) {
  const ModeSplit s = split(t.dims(), k);
  DenseTensor out = t;
  const double inv = 1.0 / static_cast<double>(s.nk);
  std::vector<double> mean(s.inner);
  for (std::size_t o = 0; o < s.outer; ++o) {
    double* slab = out.data().data() + o * s.nk * s.inner;
    std::fill(mean.begin(), mean.end(), 0.0);
    for (std::size_t i = 0; i < s.nk; ++i) kernels::axpy(inv, {slab + i * s.inner, s.inner}, mean);
    for (std::size_t i = 0; i < s.nk; ++i) kernels::axpy(-1.0, mean, {slab + i * s.inner, s.inner});
  }
  return out;
}

double inner(const DenseTensor& a, const DenseTensor& b) {
  if (a.dims() != b.dims()) throw DimensionError("inner: dims mismatch");
  return kernels::dot(a.data(), b.data());
}

double norm_T(const DenseTensor& a) { return std::sqrt(kernels::sum_sq(a.data())); }
double norm_l1(const DenseTensor& a) { return kernels::sum_abs(a.data()); }
double norm_linf(const DenseTensor& a) { return kernels::max_abs(a.data()); }

DenseTensor outer(const DenseTensor& a, const DenseTensor& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  DenseTensor out(dims);
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::span<double> dst{out.data().data() + i * nb, nb};
    kernels::axpy(a[i], b.data(), dst);
  }
  return out;
}

DenseTensor permute_mode(const DenseTensor& t, std::span<const std::size_t> perm, std::size_t k) {
  const ModeSplit s = split(t.dims(), k);
  if (perm.size() != s.nk) throw DimensionError("permute_mode: permutation length differs from mode size");
  DenseTensor out(t.dims());
  for (std::size_t o = 0; o < s.outer; ++o) {
    const double* src = t.data().data() + o * s.nk * s.inner;
    double* dst = out.data().data() + o * s.nk * s.inner;
    for (std::size_t i = 0; i < s.nk; ++i) {
      if (perm[i] >= s.nk) throw DomainError("permute_mode: index out of range");
      std::copy_n(src + perm[i] * s.inner, s.inner, dst + i * s.inner);
    }
  }
  return out;
}

}  // namespace exch

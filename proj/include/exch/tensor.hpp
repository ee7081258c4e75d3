#pragma once
// Dense K-mode tensors stored row-major (last index fastest).
//
// Modes are 0-based in this API: mode k of a tensor with dims (N_0, ..., N_{K-1}).
// A tensor with empty dims is a scalar holding exactly one entry.

#include <cstddef>
#include <span>
#include <vector>

#include "exch/matrix.hpp"

namespace exch {

class DenseTensor {
 public:
  DenseTensor();
  explicit DenseTensor(std::vector<std::size_t> dims, double fill = 0.0);
  DenseTensor(std::vector<std::size_t> dims, std::vector<double> data);

  static DenseTensor scalar(double v);
  static DenseTensor vector(std::vector<double> v);
  static DenseTensor from_matrix(const Matrix& m);

  std::size_t order() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  std::size_t size() const { return data_.size(); }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double& at(std::span<const std::size_t> idx);
  double at(std::span<const std::size_t> idx) const;
  std::size_t offset(std::span<const std::size_t> idx) const;

  double sum() const;
  double mean() const;

  DenseTensor& operator+=(const DenseTensor& o);
  DenseTensor& operator-=(const DenseTensor& o);
  DenseTensor& operator*=(double c);

  bool operator==(const DenseTensor& o) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> data_;
};

DenseTensor operator+(DenseTensor a, const DenseTensor& b);
DenseTensor operator-(DenseTensor a, const DenseTensor& b);
DenseTensor operator*(DenseTensor a, double c);
DenseTensor operator*(double c, DenseTensor a);

/// Product of dims with overflow checking (capped at 2^31 entries).
std::size_t checked_volume(std::span<const std::size_t> dims);

/// (t ×_k B)_{..j..} = Σ_i B(j, i)·t_{..i..}; B must have dim(k) columns.
DenseTensor mode_product(const DenseTensor& t, const Matrix& b, std::size_t k);

/// Average over the last mode; a K-mode tensor becomes a (K−1)-mode tensor.
DenseTensor average_last_mode(const DenseTensor& t);

/// Levels 0..K of successive last-mode averages; level K is the tensor itself,
/// level k has dims (N_0, ..., N_{k−1}), level 0 is the grand mean as a scalar tensor.
struct ModeAverageLadder {
  std::vector<std::size_t> source_dims;
  std::vector<DenseTensor> levels;

  const DenseTensor& level(std::size_t k) const { return levels.at(k); }
  /// Level k broadcast back to the full source shape (constant along modes k..K−1).
  DenseTensor broadcast(std::size_t k) const;
};

ModeAverageLadder mode_average_ladder(const DenseTensor& t);

/// t ×_k (I − (1/N_k)·11ᵀ): subtracts the mean of every mode-k fiber.
DenseTensor center_mode(const DenseTensor& t, std::size_t k);

/// Broadcast a tensor with dims (N_0..N_{j−1}) to (N_0..N_{K−1}) by repeating along trailing modes.
DenseTensor broadcast_trailing(const DenseTensor& t, std::span<const std::size_t> full_dims);

double inner(const DenseTensor& a, const DenseTensor& b);
double norm_T(const DenseTensor& a);
double norm_l1(const DenseTensor& a);
double norm_linf(const DenseTensor& a);

DenseTensor outer(const DenseTensor& a, const DenseTensor& b);

/// Permute the slices of mode k: out_{..i..} = t_{..perm[i]..}.
DenseTensor permute_mode(const DenseTensor& t, std::span<const std::size_t> perm, std::size_t k);

}  // namespace exch

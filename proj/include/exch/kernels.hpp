#pragma once
// Data-parallel inner loops shared by the tensor, matrix and sketching code.
//
// Every kernel has a scalar reference implementation and an AVX2/FMA variant.
// The variant is chosen once per process from the CPU feature bits; setting
// EXCH_SIMD=scalar in the environment forces the reference path (useful for
// bit-for-bit replays across machines with different instruction sets).

#include <cstddef>
#include <span>
#include <string_view>

namespace exch::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*sum_abs)(const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
}  // namespace avx2

bool cpu_has_avx2();
const KernelTable& table_for(Isa isa);
/// The table selected for this process.
const KernelTable& active();
Isa active_isa();
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double sum_abs(std::span<const double> x) { return active().sum_abs(x.data(), x.size()); }
inline double max_abs(std::span<const double> x) { return active().max_abs(x.data(), x.size()); }
inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }
inline double sum_sq(std::span<const double> x) { return dot(x, x); }

/// C (m×n) += A (m×k) · B (k×n); all row-major and contiguous.
void gemm_acc(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b, double* c);

}  // namespace exch::kernels

#include "exch/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace exch::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

void scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

}  // namespace scalar

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& table_for(Isa isa) {
  static const KernelTable scalar_table{scalar::dot, scalar::axpy, scalar::sum,
                                        scalar::sum_abs, scalar::max_abs, scalar::scale};
  static const KernelTable avx2_table{avx2::dot, avx2::axpy, avx2::sum,
                                      avx2::sum_abs, avx2::max_abs, avx2::scale};
  return isa == Isa::Avx2 ? avx2_table : scalar_table;
}

namespace {

Isa select_isa() {
  if (const char* env = std::getenv("EXCH_SIMD")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& t = table_for(active_isa());
  return t;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void gemm_acc(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b, double* c) {
  const auto& t = active();
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    const double* arow = a + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = arow[p];
      if (aip != 0.0) t.axpy(aip, b + p * n, crow, n);
    }
  }
}

}  // namespace exch::kernels

#pragma once

// Data-parallel inner loops shared by the solvers. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant. The variant
// is picked once at startup from the CPU feature bits; MMDUAL_SIMD=scalar
// (or avx2) in the environment overrides the choice.

#include <span>
#include <string_view>

namespace mmdual::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = x + a * y
  void (*xpay)(const double* x, double a, double* y, std::size_t n);
  // sum_c (a0[c]^2 + a1[c]^2 + a2[c]^2) / d[c]
  double (*quad_over_lin)(const double* a0, const double* a1, const double* a2,
                          const double* d, std::size_t n);
  // out_k[c] = a_k[c] / d[c] for k = 0..2 (in place allowed)
  void (*divide3)(const double* a0, const double* a1, const double* a2,
                  const double* d, double* o0, double* o1, double* o2,
                  std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the AVX2 variant is not compiled in.
const KernelTable* avx2_table();

bool cpu_has_avx2();

Isa active_isa();
// Returns false (and leaves the selection unchanged) if the ISA is unavailable.
bool set_isa(Isa isa);
std::string_view isa_name(Isa isa);

const KernelTable& active();

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline double sum_sq(std::span<const double> x) {
  return active().sum_sq(x.data(), x.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline void xpay(std::span<const double> x, double a, std::span<double> y) {
  active().xpay(x.data(), a, y.data(), x.size());
}

}  // namespace mmdual::kernels

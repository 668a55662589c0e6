#include "mmdual/kernels.hpp"

namespace mmdual::kernels {
namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq(const double* x, std::size_t n) { return dot(x, x, n); }

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay(const double* x, double a, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

double quad_over_lin(const double* a0, const double* a1, const double* a2,
                     const double* d, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += (a0[i] * a0[i] + a1[i] * a1[i] + a2[i] * a2[i]) / d[i];
  return s;
}

void divide3(const double* a0, const double* a1, const double* a2,
             const double* d, double* o0, double* o1, double* o2,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double inv = 1.0 / d[i];
    o0[i] = a0[i] * inv;
    o1[i] = a1[i] * inv;
    o2[i] = a2[i] * inv;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{dot, sum_sq, axpy, xpay, quad_over_lin,
                                 divide3};
  return table;
}

}  // namespace mmdual::kernels

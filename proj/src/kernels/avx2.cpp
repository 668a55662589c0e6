#include <immintrin.h>

#include "mmdual/kernels.hpp"

namespace mmdual::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq(const double* x, std::size_t n) { return dot(x, x, n); }

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpay(const double* x, double a, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vy, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

double quad_over_lin(const double* a0, const double* a1, const double* a2,
                     const double* d, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(a0 + i);
    __m256d v1 = _mm256_loadu_pd(a1 + i);
    __m256d v2 = _mm256_loadu_pd(a2 + i);
    __m256d q = _mm256_mul_pd(v0, v0);
    q = _mm256_fmadd_pd(v1, v1, q);
    q = _mm256_fmadd_pd(v2, v2, q);
    acc = _mm256_add_pd(acc, _mm256_div_pd(q, _mm256_loadu_pd(d + i)));
  }
  double s = hsum(acc);
  for (; i < n; ++i)
    s += (a0[i] * a0[i] + a1[i] * a1[i] + a2[i] * a2[i]) / d[i];
  return s;
}

void divide3(const double* a0, const double* a1, const double* a2,
             const double* d, double* o0, double* o1, double* o2,
             std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d inv = _mm256_div_pd(one, _mm256_loadu_pd(d + i));
    __m256d v0 = _mm256_loadu_pd(a0 + i);
    __m256d v1 = _mm256_loadu_pd(a1 + i);
    __m256d v2 = _mm256_loadu_pd(a2 + i);
    _mm256_storeu_pd(o0 + i, _mm256_mul_pd(v0, inv));
    _mm256_storeu_pd(o1 + i, _mm256_mul_pd(v1, inv));
    _mm256_storeu_pd(o2 + i, _mm256_mul_pd(v2, inv));
  }
  for (; i < n; ++i) {
    const double inv = 1.0 / d[i];
    o0[i] = a0[i] * inv;
    o1[i] = a1[i] * inv;
    o2[i] = a2[i] * inv;
  }
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{dot, sum_sq, axpy, xpay, quad_over_lin,
                                 divide3};
  return &table;
}

}  // namespace mmdual::kernels

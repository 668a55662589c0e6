#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "mmdual/kernels.hpp"

using namespace mmdual::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng, double lo = -1.0,
                               double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double close(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

}  // namespace

TEST_CASE("scalar kernels on hand-checked inputs") {
  const KernelTable& s = scalar_table();
  const double x[] = {1, 2, 3}, y[] = {4, -5, 6};
  CHECK(s.dot(x, y, 3) == 12.0);
  CHECK(s.sum_sq(x, 3) == 14.0);
  double z[] = {1, 1, 1};
  s.axpy(2.0, x, z, 3);
  CHECK(z[2] == 7.0);
  s.xpay(x, 0.5, z, 3);
  CHECK(z[0] == 2.5);
  const double d[] = {2, 4, 8};
  CHECK(s.quad_over_lin(x, x, x, d, 3) == doctest::Approx(3.0 / 2 + 12.0 / 4 + 27.0 / 8));
  double o0[3], o1[3], o2[3];
  s.divide3(x, y, x, d, o0, o1, o2, 3);
  CHECK(o1[1] == -1.25);
}

TEST_CASE("avx2 kernels match scalar across lengths and tails") {
  const KernelTable* v = avx2_table();
  if (v == nullptr || !cpu_has_avx2()) {
    MESSAGE("AVX2 variant unavailable; equivalence not exercised");
    return;
  }
  const KernelTable& s = scalar_table();
  std::mt19937_64 rng(11);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 100u, 1023u}) {
    CAPTURE(n);
    auto x = random_vec(n, rng), y = random_vec(n, rng), w = random_vec(n, rng);
    auto d = random_vec(n, rng, 0.5, 2.0);
    CHECK(close(s.dot(x.data(), y.data(), n), v->dot(x.data(), y.data(), n)) <= 1e-14);
    CHECK(close(s.sum_sq(x.data(), n), v->sum_sq(x.data(), n)) <= 1e-14);
    CHECK(close(s.quad_over_lin(x.data(), y.data(), w.data(), d.data(), n),
                v->quad_over_lin(x.data(), y.data(), w.data(), d.data(), n)) <= 1e-14);

    auto ya = y, yb = y;
    s.axpy(0.3, x.data(), ya.data(), n);
    v->axpy(0.3, x.data(), yb.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(close(ya[i], yb[i]) <= 1e-15);
    ya = y;
    yb = y;
    s.xpay(x.data(), -0.7, ya.data(), n);
    v->xpay(x.data(), -0.7, yb.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(close(ya[i], yb[i]) <= 1e-15);

    std::vector<double> a0(n), a1(n), a2(n), b0(n), b1(n), b2(n);
    s.divide3(x.data(), y.data(), w.data(), d.data(), a0.data(), a1.data(), a2.data(), n);
    v->divide3(x.data(), y.data(), w.data(), d.data(), b0.data(), b1.data(), b2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(a0[i] == b0[i]);
      CHECK(a1[i] == b1[i]);
      CHECK(a2[i] == b2[i]);
    }
  }
}

TEST_CASE("isa selection can be forced and restored") {
  const Isa start = active_isa();
  CHECK(set_isa(Isa::Scalar));
  CHECK(active_isa() == Isa::Scalar);
  CHECK(&active() == &scalar_table());
  if (avx2_table() != nullptr && cpu_has_avx2()) {
    CHECK(set_isa(Isa::Avx2));
    CHECK(&active() == avx2_table());
  } else {
    CHECK_FALSE(set_isa(Isa::Avx2));
  }
  set_isa(start);
  CHECK(isa_name(Isa::Scalar) == "scalar");
}

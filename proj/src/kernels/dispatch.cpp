#include <cstdlib>
#include <cstring>

#include "mmdual/kernels.hpp"

namespace mmdual::kernels {

#if defined(MMDUAL_HAVE_AVX2)
const KernelTable* avx2_table_impl();
const KernelTable* avx2_table() { return avx2_table_impl(); }
#else
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(MMDUAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return has;
#else
  return false;
#endif
}

namespace {

Isa initial_isa() {
  const char* env = std::getenv("MMDUAL_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

Isa& current() {
  static Isa isa = initial_isa();
  return isa;
}

}  // namespace

Isa active_isa() { return current(); }

bool set_isa(Isa isa) {
  if (isa == Isa::Avx2 && (!cpu_has_avx2() || avx2_table() == nullptr))
    return false;
  current() = isa;
  return true;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

const KernelTable& active() {
  if (current() == Isa::Avx2) return *avx2_table();
  return scalar_table();
}

}  // namespace mmdual::kernels

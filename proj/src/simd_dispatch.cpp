#include "stokesnet/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace stokesnet {

namespace {

SimdLevel detect_level() {
  if (const char* env = std::getenv("STOKESNET_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return SimdLevel::Scalar;
#ifdef STOKESNET_HAVE_AVX2_TU
    if (std::strcmp(env, "avx2") == 0) return SimdLevel::Avx2;
#endif
    return SimdLevel::Scalar;
  }
#if defined(STOKESNET_HAVE_AVX2_TU) && defined(__x86_64__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return SimdLevel::Avx2;
#endif
  return SimdLevel::Scalar;
}

SimdLevel& level_slot() {
  static SimdLevel level = detect_level();
  return level;
}

}  // namespace

SimdLevel active_simd_level() { return level_slot(); }

void set_simd_level(SimdLevel level) {
#ifndef STOKESNET_HAVE_AVX2_TU
  level = SimdLevel::Scalar;
#endif
  level_slot() = level;
}

const char* simd_level_name(SimdLevel level) {
  switch (level) {
    case SimdLevel::Scalar: return "scalar";
    case SimdLevel::Avx2: return "avx2";
  }
  return "unknown";
}

const Kernels& kernels_for(SimdLevel level) {
#ifdef STOKESNET_HAVE_AVX2_TU
  if (level == SimdLevel::Avx2) return detail::kernels_avx2;
#else
  (void)level;
#endif
  return detail::kernels_scalar;
}

const Kernels& active_kernels() { return kernels_for(active_simd_level()); }

}  // namespace stokesnet

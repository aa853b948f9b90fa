#include <cstdlib>
#include <string_view>

#include "planeshape/simd/kernels.hpp"

namespace planeshape::simd {

#if defined(PLANESHAPE_BUILD_AVX2)
const Kernels* avx2_kernels_impl();
#endif

const Kernels* avx2_kernels() {
#if defined(PLANESHAPE_BUILD_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& kernels() {
  static const Kernels& selected = []() -> const Kernels& {
    const char* env = std::getenv("PLANESHAPE_SIMD");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return selected;
}

}  // namespace planeshape::simd

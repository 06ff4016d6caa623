#include "vml/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace vml::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& select() {
    const char* env = std::getenv("VML_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    if (const KernelTable* t = avx2_kernels(); t && cpu_has_avx2()) return *t;
    return scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
    static const KernelTable& active = select();
    return active;
}

}  // namespace vml::simd

#include <cstdlib>
#include <string_view>

#include "mallows/kernels.hpp"

namespace mallows::kernels {

#if defined(MALLOWS_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(MALLOWS_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    return supported ? &avx2_kernel_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& chosen = []() -> const KernelTable& {
        const char* forced = std::getenv("MALLOWS_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
        if (const KernelTable* simd = avx2_kernels()) return *simd;
        return scalar_kernels();
    }();
    return chosen;
}

std::vector<const KernelTable*> available() {
    std::vector<const KernelTable*> out{&scalar_kernels()};
    if (const KernelTable* simd = avx2_kernels()) out.push_back(simd);
    return out;
}

} // namespace mallows::kernels

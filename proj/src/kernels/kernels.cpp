#include "qst/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qst::kernels {

bool avx2_compiled();  // defined in kernels_avx2.cpp

bool avx2_supported() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
    return avx2_compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& active_ops() {
    static const Ops& selected = []() -> const Ops& {
        const char* env = std::getenv("QST_SIM_KERNEL");
        if (env != nullptr) {
            if (std::strcmp(env, "scalar") == 0) return scalar_ops();
            if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return avx2_ops();
        }
        return avx2_supported() ? avx2_ops() : scalar_ops();
    }();
    return selected;
}

}  // namespace qst::kernels

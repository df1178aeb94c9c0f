#include <cstring>
#include <stdexcept>

#include "pk/kernels.hpp"

namespace pk::kernels {

namespace {
const char* g_active = "ref";

conv_fn pick_default() {
#ifdef PK_WITH_AVX2
    if (__builtin_cpu_supports("avx2")) {
        g_active = "avx2";
        return conv_cyclic_accum_avx2;
    }
#endif
#ifdef PK_WITH_NEON
    g_active = "neon";
    return conv_cyclic_accum_neon;
#endif
    g_active = "ref";
    return conv_cyclic_accum_ref;
}
}  // namespace

conv_fn conv_cyclic_accum = pick_default();

const char* active_kernel() { return g_active; }

void select_kernel(const char* name) {
    if (!std::strcmp(name, "ref")) {
        conv_cyclic_accum = conv_cyclic_accum_ref;
        g_active = "ref";
        return;
    }
#ifdef PK_WITH_AVX2
    if (!std::strcmp(name, "avx2")) {
        if (!__builtin_cpu_supports("avx2")) throw std::runtime_error("avx2 not supported here");
        conv_cyclic_accum = conv_cyclic_accum_avx2;
        g_active = "avx2";
        return;
    }
#endif
#ifdef PK_WITH_NEON
    if (!std::strcmp(name, "neon")) {
        conv_cyclic_accum = conv_cyclic_accum_neon;
        g_active = "neon";
        return;
    }
#endif
    throw std::runtime_error(std::string("unknown kernel: ") + name);
}

}  // namespace pk::kernels

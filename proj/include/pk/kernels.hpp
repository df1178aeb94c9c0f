#pragma once

// Data-parallel inner kernels with scalar reference implementations and
// SIMD variants selected at runtime. The reference path is the semantic
// definition; vector paths must match it bit for bit.

#include <cstddef>

#include "pk/util.hpp"

namespace pk::kernels {

// out[(i+j) mod L] += a[i] * b[j]; inputs are nonnegative counts well below
// 2^32, accumulation in u64
using conv_fn = void (*)(const u32* a, const u32* b, u64* out, size_t L);

extern conv_fn conv_cyclic_accum;

void conv_cyclic_accum_ref(const u32* a, const u32* b, u64* out, size_t L);
#ifdef PK_WITH_AVX2
void conv_cyclic_accum_avx2(const u32* a, const u32* b, u64* out, size_t L);
#endif
#ifdef PK_WITH_NEON
void conv_cyclic_accum_neon(const u32* a, const u32* b, u64* out, size_t L);
#endif

const char* active_kernel();
// force a specific variant ("ref", "avx2", "neon"); throws if unavailable
void select_kernel(const char* name);

}  // namespace pk::kernels

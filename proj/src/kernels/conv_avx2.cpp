#include <immintrin.h>

#include "pk/kernels.hpp"

namespace pk::kernels {

// same loop structure as the reference; 4 u32 products per step via
// zero-extension to 64-bit lanes and mul_epu32
void conv_cyclic_accum_avx2(const u32* a, const u32* b, u64* out, size_t L) {
    for (size_t i = 0; i < L; ++i) {
        u64 ai = a[i];
        if (!ai) continue;
        __m256i va = _mm256_set1_epi64x((long long)ai);
        size_t head = L - i;
        u64* o = out + i;
        size_t j = 0;
        for (; j + 4 <= head; j += 4) {
            __m256i vb = _mm256_cvtepu32_epi64(_mm_loadu_si128((const __m128i*)(b + j)));
            __m256i prod = _mm256_mul_epu32(va, vb);
            __m256i acc = _mm256_loadu_si256((__m256i*)(o + j));
            _mm256_storeu_si256((__m256i*)(o + j), _mm256_add_epi64(acc, prod));
        }
        for (; j < head; ++j) o[j] += ai * b[j];
        o = out;
        size_t tail = L - head;
        size_t k = 0;
        for (; k + 4 <= tail; k += 4) {
            __m256i vb = _mm256_cvtepu32_epi64(_mm_loadu_si128((const __m128i*)(b + head + k)));
            __m256i prod = _mm256_mul_epu32(va, vb);
            __m256i acc = _mm256_loadu_si256((__m256i*)(o + k));
            _mm256_storeu_si256((__m256i*)(o + k), _mm256_add_epi64(acc, prod));
        }
        for (; k < tail; ++k) o[k] += ai * b[head + k];
    }
}

}  // namespace pk::kernels

#include <arm_neon.h>

#include "pk/kernels.hpp"

namespace pk::kernels {

void conv_cyclic_accum_neon(const u32* a, const u32* b, u64* out, size_t L) {
    for (size_t i = 0; i < L; ++i) {
        u64 ai = a[i];
        if (!ai) continue;
        uint32x2_t va = vdup_n_u32((u32)ai);
        size_t head = L - i;
        u64* o = out + i;
        size_t j = 0;
        for (; j + 2 <= head; j += 2) {
            uint32x2_t vb = vld1_u32(b + j);
            uint64x2_t acc = vld1q_u64(o + j);
            vst1q_u64(o + j, vmlal_u32(acc, va, vb));
        }
        for (; j < head; ++j) o[j] += ai * b[j];
        o = out;
        size_t tail = L - head;
        size_t k = 0;
        for (; k + 2 <= tail; k += 2) {
            uint32x2_t vb = vld1_u32(b + head + k);
            uint64x2_t acc = vld1q_u64(o + k);
            vst1q_u64(o + k, vmlal_u32(acc, va, vb));
        }
        for (; k < tail; ++k) o[k] += ai * b[head + k];
    }
}

}  // namespace pk::kernels

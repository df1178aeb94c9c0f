#include "pk/kernels.hpp"

namespace pk::kernels {

void conv_cyclic_accum_ref(const u32* a, const u32* b, u64* out, size_t L) {
    for (size_t i = 0; i < L; ++i) {
        u64 ai = a[i];
        if (!ai) continue;
        size_t head = L - i;  // j in [0, head) lands at i+j without wrap
        u64* o = out + i;
        for (size_t j = 0; j < head; ++j) o[j] += ai * b[j];
        o = out;
        for (size_t j = head; j < L; ++j) o[j - head] += ai * b[j];
    }
}

}  // namespace pk::kernels

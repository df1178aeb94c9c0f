#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pk/kernels.hpp"

using namespace pk;
using namespace pk::kernels;

TEST_CASE("small hand-checked convolution") {
    u32 a[3] = {1, 2, 0};
    u32 b[3] = {3, 0, 1};
    u64 out[3] = {0, 0, 0};
    conv_cyclic_accum_ref(a, b, out, 3);
    // (1 + 2x)(3 + x^2) mod x^3-1: 3 + 6x + x^2 + 2x^3 -> (3+2) + 6x + x^2
    CHECK(out[0] == 5);
    CHECK(out[1] == 6);
    CHECK(out[2] == 1);
}

TEST_CASE("vector paths match the reference bit for bit") {
    std::mt19937_64 rng(99);
    for (size_t L : {1, 2, 3, 7, 16, 33, 124, 625}) {
        std::vector<u32> a(L), b(L);
        for (auto& v : a) v = (u32)(rng() % 100000);
        for (auto& v : b) v = (u32)(rng() % 100000);
        std::vector<u64> o1(L, 7), o2(L, 7);
        conv_cyclic_accum_ref(a.data(), b.data(), o1.data(), L);
#ifdef PK_WITH_AVX2
        conv_cyclic_accum_avx2(a.data(), b.data(), o2.data(), L);
        CHECK(o1 == o2);
#endif
        // whatever was selected at startup must also match
        std::vector<u64> o3(L, 7);
        conv_cyclic_accum(a.data(), b.data(), o3.data(), L);
        CHECK(o1 == o3);
    }
}

TEST_CASE("kernel selection") {
    select_kernel("ref");
    CHECK(std::string(active_kernel()) == "ref");
    CHECK_THROWS(select_kernel("nope"));
}

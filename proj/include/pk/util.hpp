#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pk {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct RingMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByNonUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotOneUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SlopeCollision : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolveFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MultipleUnitRoots : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CorruptCacheEntry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 addmod_u64(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s % m;
}

inline u64 submod_u64(u64 a, u64 b, u64 m) { return a >= b ? (a - b) % m : m - ((b - a) % m); }

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// inverse of a mod m for a coprime to m (m need not be prime)
inline u64 invmod_u64(u64 a, u64 m) {
    i64 t = 0, newt = 1;
    i64 r = (i64)m, newr = (i64)(a % m);
    while (newr != 0) {
        i64 q = r / newr;
        i64 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw DivisionByNonUnit("invmod: not invertible");
    if (t < 0) t += (i64)m;
    return (u64)t;
}

inline u32 padic_ord_u64(u64 x, u32 p) {
    if (x == 0) return UINT32_MAX;
    u32 v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

inline u32 digit_sum_base_p(u64 x, u32 p) {
    u32 s = 0;
    while (x) {
        s += (u32)(x % p);
        x /= p;
    }
    return s;
}

// FNV-1a, used for content addressing of cache entries
inline u64 fnv1a(const void* data, size_t len, u64 h = 1469598103934665603ull) {
    const u8* b = (const u8*)data;
    for (size_t i = 0; i < len; ++i) {
        h ^= b[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline u64 fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

inline std::string to_hex(u64 x) {
    static const char* d = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = d[x & 15];
        x >>= 4;
    }
    return s;
}

}  // namespace pk

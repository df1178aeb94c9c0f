#pragma once

// Dense polynomials over F_p (p small prime), coefficient vectors with
// constant term first. Enough machinery to pick defining moduli for the
// unramified towers and to test irreducibility.

#include <vector>

#include "pk/util.hpp"

namespace pk {

using FpPoly = std::vector<u32>;  // c[0] + c[1] t + ...

inline void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int fp_deg(const FpPoly& f) { return (int)f.size() - 1; }

inline FpPoly fp_add(const FpPoly& f, const FpPoly& g, u32 p) {
    FpPoly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 s = (i < f.size() ? f[i] : 0) + (i < g.size() ? g[i] : 0);
        r[i] = s % p;
    }
    fp_trim(r);
    return r;
}

inline FpPoly fp_sub(const FpPoly& f, const FpPoly& g, u32 p) {
    FpPoly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 a = i < f.size() ? f[i] : 0, b = i < g.size() ? g[i] : 0;
        r[i] = (a + p - b) % p;
    }
    fp_trim(r);
    return r;
}

inline FpPoly fp_mul(const FpPoly& f, const FpPoly& g, u32 p) {
    if (f.empty() || g.empty()) return {};
    FpPoly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = (r[i + j] + f[i] * g[j]) % p;
    fp_trim(r);
    return r;
}

// remainder of f by monic g
inline FpPoly fp_mod(FpPoly f, const FpPoly& g, u32 p) {
    fp_trim(f);
    int dg = fp_deg(g);
    while (fp_deg(f) >= dg) {
        u32 c = f.back();
        int shift = fp_deg(f) - dg;
        for (int i = 0; i <= dg; ++i) f[i + shift] = (f[i + shift] + p - c * g[i] % p) % p;
        fp_trim(f);
    }
    return f;
}

inline FpPoly fp_mulmod(const FpPoly& f, const FpPoly& g, const FpPoly& m, u32 p) {
    return fp_mod(fp_mul(f, g, p), m, p);
}

inline FpPoly fp_powmod(FpPoly base, u64 e, const FpPoly& m, u32 p) {
    FpPoly r = {1};
    base = fp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, u32 p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // make b monic before reducing
        u32 lead = b.back();
        if (lead != 1) {
            u32 li = (u32)invmod_u64(lead, p);
            for (auto& c : b) c = c * li % p;
        }
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline u32 fp_eval(const FpPoly& f, u32 x, u32 p) {
    u64 r = 0;
    for (size_t i = f.size(); i-- > 0;) r = (r * x + f[i]) % p;
    return (u32)r;
}

// monic degree-k polynomial irreducible over F_p?
inline bool fp_irreducible(const FpPoly& f, u32 p) {
    int k = fp_deg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    FpPoly x = {0, 1};
    // x^(p^k) == x mod f
    FpPoly fr = x;
    for (int i = 0; i < k; ++i) fr = fp_powmod(fr, p, f, p);
    if (fp_sub(fr, x, p) != FpPoly{}) return false;
    // gcd(x^(p^(k/r)) - x, f) = 1 for prime divisors r of k
    for (int r = 2; r <= k; ++r) {
        if (k % r != 0) continue;
        bool isprime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) isprime = false;
        if (!isprime) continue;
        FpPoly y = x;
        for (int i = 0; i < k / r; ++i) y = fp_powmod(y, p, f, p);
        FpPoly g = fp_gcd(f, fp_sub(y, x, p), p);
        if (fp_deg(g) != 0) return false;
    }
    return true;
}

// Canonical defining modulus for F_{p^k} / Z_{p^k}: the monic irreducible of
// degree k whose coefficient vector (c_0, .., c_{k-1}), read as the base-p
// integer sum c_i p^i, is smallest. Recorded in every artifact so cross-run
// comparisons are well defined.
inline FpPoly canonical_modulus(u32 p, u32 k) {
    if (k == 1) return {0, 1};  // F_p itself; t = 0
    u64 total = 1;
    for (u32 i = 0; i < k; ++i) total *= p;
    for (u64 code = 0; code < total; ++code) {
        FpPoly f(k + 1, 0);
        u64 c = code;
        for (u32 i = 0; i < k; ++i) {
            f[i] = (u32)(c % p);
            c /= p;
        }
        f[k] = 1;
        if (fp_irreducible(f, p)) return f;
    }
    throw std::logic_error("canonical_modulus: none found");
}

}  // namespace pk

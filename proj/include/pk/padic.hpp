#pragma once

// Exact arithmetic in R_d = Z_{p^{a d}}[pi]/(pi^(p-1)+p) at absolute
// precision p^N. Elements are coordinate vectors over the basis t^i pi^e,
// 0 <= i < a*d, 0 <= e < p-1, with the unramified part Z_{p^{a d}} presented
// as Z_p[t]/(u(t)) for a monic lift u of an irreducible polynomial mod p.
//
// ord_p is normalized by ord_p(p) = 1, so ord_p(pi) = 1/(p-1); valuations are
// carried as integer pi-orders (numerator over p-1).

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "pk/ffpoly.hpp"
#include "pk/util.hpp"

namespace pk {

struct PadicRing;
using RingPtr = std::shared_ptr<const PadicRing>;

struct PadicRing {
    u32 p = 5;
    u32 a = 1;  // unramified degree of the base field over Q_p
    u32 d = 1;  // relative degree of the closed point
    u32 N = 4;  // absolute precision: elements known mod p^N
    FpPoly modulus;        // monic irreducible of degree a*d over F_p
    u64 pN = 0;            // p^N
    std::vector<u64> ppow; // p^0..p^N

    u32 k() const { return a * d; }
    u32 width() const { return (p - 1) * k(); }

    static RingPtr make(u32 p, u32 a, u32 d, u32 N, FpPoly modulus = {});
    bool same(const PadicRing& o) const {
        return p == o.p && a == o.a && d == o.d && N == o.N && modulus == o.modulus;
    }
};

constexpr int ORD_INF = INT32_MAX;

// pi-adic order as a fraction numerator/(p-1); infinite means zero at
// stored precision.
struct Valuation {
    int numerator = 0;
    u32 denominator = 4;
    bool infinite = false;
};

class Padic {
  public:
    Padic() = default;
    explicit Padic(RingPtr r) : R(std::move(r)), c(R->width(), 0) {}

    static Padic zero(const RingPtr& r) { return Padic(r); }
    static Padic one(const RingPtr& r) {
        Padic x(r);
        x.c[0] = 1 % r->pN;
        return x;
    }
    static Padic from_int(const RingPtr& r, i64 v);
    static Padic pi(const RingPtr& r) {
        Padic x(r);
        if (r->p == 2) throw std::logic_error("p must be >= 5");
        x.c[r->k()] = 1;  // e=1, i=0
        return x;
    }
    // coordinate access: e-th pi power, i-th t power
    u64 at(u32 e, u32 i) const { return c[e * R->k() + i]; }
    u64& at(u32 e, u32 i) { return c[e * R->k() + i]; }

    const RingPtr& ring() const { return R; }
    const std::vector<u64>& coords() const { return c; }
    std::vector<u64>& coords() { return c; }

    bool is_zero() const;
    bool operator==(const Padic& o) const { return c == o.c; }
    bool operator!=(const Padic& o) const { return c != o.c; }

    Padic operator+(const Padic& o) const;
    Padic operator-(const Padic& o) const;
    Padic operator-() const;
    Padic operator*(const Padic& o) const;
    Padic& operator+=(const Padic& o) { return *this = *this + o; }
    Padic& operator-=(const Padic& o) { return *this = *this - o; }
    Padic& operator*=(const Padic& o) { return *this = *this * o; }

    Padic scaled(u64 s) const;  // multiply by an integer scalar mod p^N
    Padic mul_pi() const;
    Padic mul_pi_pow(u32 e) const;
    // exact division; throws DivisionByNonUnit if not divisible
    Padic div_pi_exact() const;
    Padic div_pi_pow_exact(u32 e) const;
    Padic div_p_pow_exact(u32 e) const;

    Padic inv() const;  // requires ord = 0
    Padic pow_u64(u64 e) const;

    // pi-adic order, capped at (p-1)*N; ORD_INF when zero at precision
    int ord_pi() const;
    Valuation valuation() const;

    // move to a ring of lower absolute precision (same p, a, d, modulus)
    Padic change_precision(const RingPtr& dst) const;

    std::string encode() const;  // canonical text encoding (JSON)

  private:
    RingPtr R;
    std::vector<u64> c;
};

inline void check_same_ring(const Padic& x, const Padic& y) {
    if (!x.ring() || !y.ring() || !x.ring()->same(*y.ring()))
        throw RingMismatch("elements from different rings");
}

enum class RingOp { add, sub, mul, div_by_unit };
Padic ring_arith(const Padic& x, const Padic& y, RingOp op);

Valuation pi_valuation(const Padic& x);

// Teichmueller lift of a residue (coefficients over F_p w.r.t. the ring
// modulus); 0 lifts to 0. Frobenius iteration x -> x^(p^k), one p-digit
// per step.
Padic teichmueller_lift(const RingPtr& R, const FpPoly& residue);

// Coefficients theta_j of Dwork's splitting function exp(pi (t - t^p)),
// exact mod p^N, for j = 0..J.
std::vector<Padic> theta_coeffs(const RingPtr& R, u32 J);

// theta(1) = sum theta_j: a primitive p-th root of unity with
// ord_p(zeta_p - 1) = 1/(p-1). Tail index chosen from (p-1)J/p^2 >= N.
Padic zeta_p(const RingPtr& R);

// p-adic integer exponents, carried as base-p digits (little endian).
struct PadicInt {
    u32 p = 5;
    std::vector<u32> digits;  // length >= precision of interest

    static PadicInt from_i64(u32 p, i64 v, u32 len);
    // "d0.d1.d2..." little-endian wire form, or plain decimal (maybe negative)
    static PadicInt parse(u32 p, const std::string& s, u32 len);
    u64 mod_ppow(u32 m) const;  // value mod p^m (m small enough for u64)
    bool is_zero() const;
    std::string decimal_or_digits() const;
};

// u^kappa for a 1-unit u via the binomial series sum C(kappa,m)(u-1)^m.
Padic unit_power_kappa(const Padic& u, const PadicInt& kappa);
Padic unit_power_kappa(const Padic& u, i64 kappa);

}  // namespace pk

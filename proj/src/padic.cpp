#include "pk/padic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace pk {

RingPtr PadicRing::make(u32 p, u32 a, u32 d, u32 N, FpPoly modulus) {
    if (p < 5) throw std::invalid_argument("p must be >= 5");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    auto r = std::make_shared<PadicRing>();
    r->p = p;
    r->a = a;
    r->d = d;
    r->N = N;
    u32 k = a * d;
    if (modulus.empty()) modulus = canonical_modulus(p, k);
    if (fp_deg(modulus) != (int)k || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree a*d");
    if (k > 1 && !fp_irreducible(modulus, p))
        throw std::invalid_argument("modulus not irreducible mod p");
    r->modulus = std::move(modulus);
    r->ppow.resize(N + 1);
    r->ppow[0] = 1;
    for (u32 i = 1; i <= N; ++i) {
        if (r->ppow[i - 1] > UINT64_MAX / p) throw std::overflow_error("p^N exceeds 64 bits");
        r->ppow[i] = r->ppow[i - 1] * p;
    }
    r->pN = r->ppow[N];
    return r;
}

Padic Padic::from_int(const RingPtr& r, i64 v) {
    Padic x(r);
    u64 m = r->pN;
    if (v >= 0)
        x.c[0] = (u64)v % m;
    else
        x.c[0] = (m - ((u64)(-v) % m)) % m;
    return x;
}

bool Padic::is_zero() const {
    for (u64 v : c)
        if (v) return false;
    return true;
}

Padic Padic::operator+(const Padic& o) const {
    check_same_ring(*this, o);
    Padic r(R);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = addmod_u64(c[i], o.c[i], R->pN);
    return r;
}

Padic Padic::operator-(const Padic& o) const {
    check_same_ring(*this, o);
    Padic r(R);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = submod_u64(c[i], o.c[i], R->pN);
    return r;
}

Padic Padic::operator-() const {
    Padic r(R);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] ? R->pN - c[i] : 0;
    return r;
}

Padic Padic::scaled(u64 s) const {
    Padic r(R);
    s %= R->pN;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = mulmod_u64(c[i], s, R->pN);
    return r;
}

Padic Padic::operator*(const Padic& o) const {
    check_same_ring(*this, o);
    const u32 p = R->p, k = R->k(), ew = p - 1;
    const u64 m = R->pN;
    // schoolbook over pi-powers and t-powers; pi-degree up to 2(p-2),
    // t-degree up to 2k-2
    std::vector<u128> acc((2 * ew - 1) * (2 * k - 1), 0);
    for (u32 e1 = 0; e1 < ew; ++e1)
        for (u32 i1 = 0; i1 < k; ++i1) {
            u64 a = c[e1 * k + i1];
            if (!a) continue;
            for (u32 e2 = 0; e2 < ew; ++e2)
                for (u32 i2 = 0; i2 < k; ++i2) {
                    u64 b = o.c[e2 * k + i2];
                    if (!b) continue;
                    acc[(e1 + e2) * (2 * k - 1) + i1 + i2] += (u128)a * b;
                }
        }
    // reduce t-degree by the monic modulus, then fold pi^(p-1) = -p
    u32 tw = 2 * k - 1;
    std::vector<u64> red((2 * ew - 1) * k, 0);
    for (u32 e = 0; e < 2 * ew - 1; ++e) {
        std::vector<u64> poly(tw);
        for (u32 i = 0; i < tw; ++i) poly[i] = (u64)(acc[e * tw + i] % m);
        for (int deg = (int)tw - 1; deg >= (int)k; --deg) {
            u64 co = poly[deg];
            if (!co) continue;
            poly[deg] = 0;
            for (u32 i = 0; i < k; ++i) {
                u64 s = mulmod_u64(co, R->modulus[i], m);
                poly[deg - k + i] = submod_u64(poly[deg - k + i], s, m);
            }
        }
        for (u32 i = 0; i < k; ++i) red[e * k + i] = poly[i];
    }
    Padic r(R);
    for (u32 e = 0; e < ew; ++e)
        for (u32 i = 0; i < k; ++i) r.c[e * k + i] = red[e * k + i];
    for (u32 e = ew; e < 2 * ew - 1; ++e) {
        // pi^e = -p * pi^(e-(p-1))
        u32 et = e - ew;
        for (u32 i = 0; i < k; ++i) {
            u64 s = mulmod_u64(red[e * k + i], p, m);
            r.c[et * k + i] = submod_u64(r.c[et * k + i], s, m);
        }
    }
    return r;
}

Padic Padic::mul_pi() const {
    const u32 p = R->p, k = R->k(), ew = p - 1;
    const u64 m = R->pN;
    Padic r(R);
    for (u32 e = 0; e + 1 < ew; ++e)
        for (u32 i = 0; i < k; ++i) r.c[(e + 1) * k + i] = c[e * k + i];
    for (u32 i = 0; i < k; ++i) {
        u64 s = mulmod_u64(c[(ew - 1) * k + i], p, m);
        r.c[i] = s ? m - s : 0;
    }
    return r;
}

Padic Padic::mul_pi_pow(u32 e) const {
    Padic r = *this;
    for (u32 t = 0; t < e; ++t) r = r.mul_pi();
    return r;
}

Padic Padic::div_pi_exact() const {
    const u32 p = R->p, k = R->k(), ew = p - 1;
    const u64 m = R->pN;
    Padic r(R);
    for (u32 i = 0; i < k; ++i) {
        u64 v = c[i];
        if (v % p != 0) throw DivisionByNonUnit("div_pi_exact: not divisible by pi");
        u64 q = (v / p) % m;
        r.c[(ew - 1) * k + i] = q ? m - q : 0;  // c0/pi = -(c0/p) pi^(p-2)
    }
    for (u32 e = 1; e < ew; ++e)
        for (u32 i = 0; i < k; ++i) r.c[(e - 1) * k + i] = c[e * k + i];
    return r;
}

Padic Padic::div_pi_pow_exact(u32 e) const {
    Padic r = *this;
    for (u32 t = 0; t < e; ++t) r = r.div_pi_exact();
    return r;
}

Padic Padic::div_p_pow_exact(u32 e) const {
    if (e == 0) return *this;
    u64 pe = R->ppow[std::min(e, R->N)];
    Padic r(R);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] % pe != 0) throw DivisionByNonUnit("div_p_pow_exact: not divisible");
        r.coords()[i] = c[i] / pe;
    }
    return r;
}

int Padic::ord_pi() const {
    const u32 p = R->p, k = R->k(), ew = p - 1;
    int best = ORD_INF;
    int cap = (int)((p - 1) * R->N);
    for (u32 e = 0; e < ew; ++e) {
        u32 vmin = UINT32_MAX;
        for (u32 i = 0; i < k; ++i) {
            u32 v = padic_ord_u64(c[e * k + i], p);
            vmin = std::min(vmin, v);
        }
        if (vmin == UINT32_MAX) continue;
        int o = (int)((p - 1) * vmin + e);
        best = std::min(best, o);
    }
    if (best >= cap && best != ORD_INF) best = std::min(best, cap);
    return best;
}

Valuation Padic::valuation() const {
    Valuation v;
    v.denominator = R->p - 1;
    int o = ord_pi();
    if (o == ORD_INF) {
        v.infinite = true;
    } else {
        v.numerator = o;
    }
    return v;
}

Padic Padic::inv() const {
    if (ord_pi() != 0) throw DivisionByNonUnit("inv: not a unit");
    const u32 p = R->p, k = R->k();
    // residue mod pi is the e=0 polynomial mod p; invert it in F_{p^k}
    FpPoly r0(k);
    for (u32 i = 0; i < k; ++i) r0[i] = (u32)(c[i] % p);
    fp_trim(r0);
    u64 card = 1;
    for (u32 i = 0; i < k; ++i) card *= p;
    FpPoly ri = k == 1 ? FpPoly{(u32)invmod_u64(r0.empty() ? 0 : r0[0], p)}
                       : fp_powmod(r0, card - 2, R->modulus, p);
    Padic z(R);
    for (u32 i = 0; i < k && i < ri.size(); ++i) z.at(0, i) = ri[i];
    // Newton: z <- z(2 - xz); error squares each step
    Padic two = Padic::from_int(R, 2);
    u32 bits = 1;
    while ((1u << bits) < (p - 1) * R->N + 1) ++bits;
    for (u32 t = 0; t <= bits; ++t) z = z * (two - *this * z);
    return z;
}

Padic Padic::pow_u64(u64 e) const {
    Padic r = Padic::one(R);
    Padic b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string Padic::encode() const {
    std::ostringstream os;
    os << "{\"p\":" << R->p << ",\"a\":" << R->a << ",\"d\":" << R->d << ",\"N\":" << R->N
       << ",\"coords\":[";
    const u32 k = R->k(), ew = R->p - 1;
    for (u32 e = 0; e < ew; ++e) {
        os << (e ? ",[" : "[");
        for (u32 i = 0; i < k; ++i) os << (i ? ",\"" : "\"") << at(e, i) << "\"";
        os << "]";
    }
    os << "]}";
    return os.str();
}

Padic Padic::change_precision(const RingPtr& dst) const {
    if (dst->p != R->p || dst->a != R->a || dst->d != R->d || dst->modulus != R->modulus)
        throw RingMismatch("change_precision: incompatible rings");
    if (dst->N > R->N) throw RingMismatch("change_precision: cannot gain digits");
    Padic y(dst);
    for (size_t i = 0; i < c.size(); ++i) y.coords()[i] = c[i] % dst->pN;
    return y;
}

Padic ring_arith(const Padic& x, const Padic& y, RingOp op) {
    switch (op) {
        case RingOp::add: return x + y;
        case RingOp::sub: return x - y;
        case RingOp::mul: return x * y;
        case RingOp::div_by_unit: return x * y.inv();
    }
    throw std::logic_error("bad op");
}

Valuation pi_valuation(const Padic& x) { return x.valuation(); }

Padic teichmueller_lift(const RingPtr& R, const FpPoly& residue) {
    const u32 p = R->p, k = R->k();
    Padic x(R);
    for (u32 i = 0; i < k && i < residue.size(); ++i) x.at(0, i) = residue[i] % p;
    if (x.is_zero()) return x;
    u64 q = 1;
    for (u32 i = 0; i < k; ++i) q *= p;  // p^k; fits: k<=12ish at desk scale
    for (u32 t = 0; t <= R->N; ++t) x = x.pow_u64(q);
    return x;
}

// factorial bookkeeping: i! = p^{v_i} U_i with U_i a unit mod p^N
namespace {
struct FactUnit {
    std::vector<u64> unit;  // U_i mod p^N
    std::vector<u32> val;   // v_i
    FactUnit(u32 J, u32 p, u64 m) : unit(J + 1), val(J + 1) {
        unit[0] = 1;
        val[0] = 0;
        for (u32 i = 1; i <= J; ++i) {
            u64 f = i;
            u32 v = 0;
            while (f % p == 0) {
                f /= p;
                ++v;
            }
            unit[i] = mulmod_u64(unit[i - 1], f % m, m);
            val[i] = val[i - 1] + v;
        }
    }
};
}  // namespace

std::vector<Padic> theta_coeffs(const RingPtr& R, u32 J) {
    const u32 p = R->p;
    const u64 m = R->pN;
    FactUnit fact(J, p, m);
    // coefficient of t^j in exp(pi t): pi^{s_p(j)} (-1)^{v_j} / U_j
    auto exp_coeff = [&](u32 j, bool negate_pi_arg) -> Padic {
        u64 u = invmod_u64(fact.unit[j], m);
        Padic x = Padic::from_int(R, (i64)u);
        if (fact.val[j] & 1) x = -x;
        if (negate_pi_arg && (j & 1)) x = -x;  // (-pi)^j sign
        return x.mul_pi_pow(digit_sum_base_p(j, p));
    };
    std::vector<Padic> theta(J + 1, Padic::zero(R));
    for (u32 j = 0; j <= J; ++j) {
        Padic s = Padic::zero(R);
        for (u32 mm = 0; p * mm <= j; ++mm) {
            u32 i = j - p * mm;
            if (i > J || mm > J) continue;
            s += exp_coeff(i, false) * exp_coeff(mm, true);
        }
        theta[j] = s;
    }
    return theta;
}

Padic zeta_p(const RingPtr& R) {
    const u32 p = R->p;
    // tail: ord theta_j >= (p-1) j / p^2, need >= N
    u32 J = (R->N * p * p + (p - 2)) / (p - 1) + p;
    auto th = theta_coeffs(R, J);
    Padic z = Padic::zero(R);
    for (auto& t : th) z += t;
    return z;
}

PadicInt PadicInt::from_i64(u32 p, i64 v, u32 len) {
    PadicInt k;
    k.p = p;
    k.digits.assign(len, 0);
    if (v >= 0) {
        u64 x = (u64)v;
        for (u32 i = 0; i < len && x; ++i) {
            k.digits[i] = (u32)(x % p);
            x /= p;
        }
    } else {
        // digits of the p-adic complement 0 - |v|
        u64 x = (u64)(-v);
        std::vector<u32> d(len, 0);
        for (u32 i = 0; i < len && x; ++i) {
            d[i] = (u32)(x % p);
            x /= p;
        }
        u32 borrow = 0;
        for (u32 i = 0; i < len; ++i) {
            i64 t = -(i64)d[i] - borrow;
            borrow = 0;
            while (t < 0) {
                t += p;
                ++borrow;
            }
            k.digits[i] = (u32)t;
        }
    }
    return k;
}

PadicInt PadicInt::parse(u32 p, const std::string& s, u32 len) {
    if (s.find('.') != std::string::npos) {
        PadicInt k;
        k.p = p;
        k.digits.assign(len, 0);
        size_t pos = 0, idx = 0;
        while (pos < s.size() && idx < len) {
            size_t dot = s.find('.', pos);
            std::string part = s.substr(pos, dot == std::string::npos ? dot : dot - pos);
            u32 dgt = (u32)std::stoul(part);
            if (dgt >= p) throw std::invalid_argument("digit out of range");
            k.digits[idx++] = dgt;
            if (dot == std::string::npos) break;
            pos = dot + 1;
        }
        return k;
    }
    return from_i64(p, std::stoll(s), len);
}

u64 PadicInt::mod_ppow(u32 m) const {
    u64 r = 0, pw = 1;
    for (u32 i = 0; i < m; ++i) {
        if (i < digits.size()) r += pw * digits[i];
        pw *= p;
    }
    return r;
}

bool PadicInt::is_zero() const {
    for (u32 d : digits)
        if (d) return false;
    return true;
}

std::string PadicInt::decimal_or_digits() const {
    std::string s;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(digits[i]);
    }
    return s;
}

Padic unit_power_kappa(const Padic& u, const PadicInt& kappa) {
    const RingPtr& R = u.ring();
    const u32 p = R->p, N = R->N;
    Padic w = u - Padic::one(R);
    if (!w.is_zero() && w.ord_pi() == 0) throw NotOneUnit("unit_power_kappa: ord(u-1) = 0");
    // binomial terminates once w^m = 0 at precision: m <= (p-1)N
    u32 mmax = (p - 1) * N + 1;
    // working modulus for binomials: guard for divisions by m!
    u32 guard = (mmax) / (p - 1) + 2;
    u32 NN = N + guard;
    if (NN > 26) NN = 26;  // 5^26 < 2^64; other p smaller anyway
    u64 M = 1;
    for (u32 i = 0; i < NN; ++i) {
        if (M > UINT64_MAX / p) {
            NN = i;
            break;
        }
        M *= p;
    }
    u64 kmod = kappa.mod_ppow(NN);
    Padic acc = Padic::one(R);
    Padic wpow = Padic::one(R);
    // cur = C(kappa, m) mod p^NN; the divisions by p-parts of m lose top
    // digits, covered by the guard since the total loss is ord_p(mmax!)
    u64 cur = 1;
    for (u32 m = 1; m <= mmax; ++m) {
        wpow = wpow * w;
        if (wpow.is_zero()) break;
        // C(k,m) = C(k,m-1) * (k - m + 1) / m
        u64 f = submod_u64(kmod, (u64)(m - 1) % M, M);
        cur = mulmod_u64(cur, f, M);
        u64 md = m, pt = 1;
        while (md % p == 0) {
            md /= p;
            pt *= p;
        }
        if (cur % pt != 0) throw PrecisionExhausted("binomial digit underflow");
        cur /= pt;
        cur = mulmod_u64(cur, invmod_u64(md % M, M), M);
        acc += wpow.scaled(cur % R->pN);
    }
    return acc;
}

Padic unit_power_kappa(const Padic& u, i64 kappa) {
    return unit_power_kappa(u, PadicInt::from_i64(u.ring()->p, kappa, 2 * u.ring()->N + 40));
}

}  // namespace pk

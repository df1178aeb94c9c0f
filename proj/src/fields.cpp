#include "pk/fields.hpp"

#include <algorithm>
#include <sstream>

namespace pk {

FFieldPtr FField::make(u32 p, u32 deg, FpPoly modulus) {
    auto f = std::make_shared<FField>();
    f->p = p;
    f->deg = deg;
    if (modulus.empty()) modulus = canonical_modulus(p, deg);
    if (fp_deg(modulus) != (int)deg || modulus.back() != 1)
        throw std::invalid_argument("FField: bad modulus degree");
    if (deg > 1 && !fp_irreducible(modulus, p))
        throw std::invalid_argument("FField: modulus reducible");
    f->modulus = std::move(modulus);
    f->card = 1;
    for (u32 i = 0; i < deg; ++i) f->card *= p;
    return f;
}

FFElt FField::add(const FFElt& x, const FFElt& y) const {
    FFElt r(deg);
    for (u32 i = 0; i < deg; ++i) r[i] = (x[i] + y[i]) % p;
    return r;
}

FFElt FField::sub(const FFElt& x, const FFElt& y) const {
    FFElt r(deg);
    for (u32 i = 0; i < deg; ++i) r[i] = (x[i] + p - y[i]) % p;
    return r;
}

FFElt FField::neg(const FFElt& x) const {
    FFElt r(deg);
    for (u32 i = 0; i < deg; ++i) r[i] = (p - x[i]) % p;
    return r;
}

FFElt FField::mul(const FFElt& x, const FFElt& y) const {
    std::vector<u32> prod(2 * deg - 1, 0);
    for (u32 i = 0; i < deg; ++i) {
        if (!x[i]) continue;
        for (u32 j = 0; j < deg; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    }
    for (int dd = (int)(2 * deg - 2); dd >= (int)deg; --dd) {
        u32 c = prod[dd];
        if (!c) continue;
        prod[dd] = 0;
        for (u32 i = 0; i < deg; ++i)
            prod[dd - deg + i] = (prod[dd - deg + i] + p - c * modulus[i] % p) % p;
    }
    return FFElt(prod.begin(), prod.begin() + deg);
}

FFElt FField::pow(FFElt x, u64 e) const {
    FFElt r = one();
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

FFElt FField::inv(const FFElt& x) const {
    if (is_zero(x)) throw DivisionByNonUnit("FField::inv(0)");
    return pow(x, card - 2);
}

u64 FField::encode(const FFElt& x) const {
    u64 c = 0, pw = 1;
    for (u32 i = 0; i < deg; ++i) {
        c += pw * x[i];
        pw *= p;
    }
    return c;
}

FFElt FField::decode(u64 code) const {
    FFElt x(deg);
    for (u32 i = 0; i < deg; ++i) {
        x[i] = (u32)(code % p);
        code /= p;
    }
    return x;
}

u32 FField::trace_to_prime(const FFElt& x) const {
    FFElt s = zero(), y = x;
    for (u32 i = 0; i < deg; ++i) {
        s = add(s, y);
        y = frobenius(y);
    }
    // trace lies in F_p
    for (u32 i = 1; i < deg; ++i)
        if (s[i]) throw std::logic_error("trace not in prime field");
    return s[0];
}

FFTables FFTables::build(const FFieldPtr& F) {
    FFTables t;
    t.F = F;
    t.L = F->card - 1;
    // factor the group order
    std::vector<u64> primes;
    u64 m = t.L;
    for (u64 f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            primes.push_back(f);
            while (m % f == 0) m /= f;
        }
    }
    if (m > 1) primes.push_back(m);
    // smallest-encoded generator
    u64 g = 0;
    for (u64 code = 2; code < F->card; ++code) {
        FFElt x = F->decode(code);
        bool ok = true;
        for (u64 r : primes)
            if (F->encode(F->pow(x, t.L / r)) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = code;
            break;
        }
    }
    if (!g) throw std::logic_error("no generator found");
    t.gen_code = g;
    t.log_of.assign(F->card, UINT32_MAX);
    t.exp_of.assign(t.L, 0);
    t.trace_by_log.assign(t.L, 0);
    FFElt gx = F->decode(g), cur = F->one();
    for (u64 l = 0; l < t.L; ++l) {
        u64 code = F->encode(cur);
        t.exp_of[l] = code;
        t.log_of[code] = (u32)l;
        t.trace_by_log[l] = F->trace_to_prime(cur);
        cur = F->mul(cur, gx);
    }
    return t;
}

FFElt Embedding::map(const FFElt& x) const {
    FFElt acc = dst->zero(), pw = dst->one();
    for (u32 i = 0; i < src->deg; ++i) {
        if (x[i]) acc = dst->add(acc, dst->mul(pw, dst->from_u32(x[i])));
        pw = dst->mul(pw, gen_image);
    }
    return acc;
}

Embedding Embedding::find(const FFieldPtr& src, const FFieldPtr& dst) {
    if (dst->deg % src->deg != 0) throw std::invalid_argument("no embedding");
    Embedding e;
    e.src = src;
    e.dst = dst;
    if (src->deg == 1) {
        e.gen_image = dst->zero();
        return e;
    }
    // smallest-encoded root of src modulus in dst
    for (u64 code = 0; code < dst->card; ++code) {
        FFElt x = dst->decode(code);
        // evaluate src->modulus at x
        FFElt acc = dst->zero(), pw = dst->one();
        for (size_t i = 0; i < src->modulus.size(); ++i) {
            if (src->modulus[i]) acc = dst->add(acc, dst->mul(pw, dst->from_u32(src->modulus[i])));
            pw = dst->mul(pw, x);
        }
        if (dst->is_zero(acc)) {
            e.gen_image = x;
            return e;
        }
    }
    throw std::logic_error("embedding root not found");
}

namespace {

// irreducibility of a monic degree-d polynomial over F_q via Frobenius:
// x^(q^d) = x mod f, and x^(q^(d/r)) != x for prime r | d
bool fq_irreducible(const FFieldPtr& Fq, const FqPoly& f) {
    u32 d = (u32)f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    auto mulmod = [&](const FqPoly& A, const FqPoly& B) {
        FqPoly prod(A.size() + B.size() - 1, Fq->zero());
        for (size_t i = 0; i < A.size(); ++i) {
            if (Fq->is_zero(A[i])) continue;
            for (size_t j = 0; j < B.size(); ++j)
                prod[i + j] = Fq->add(prod[i + j], Fq->mul(A[i], B[j]));
        }
        // reduce by monic f
        for (int dd = (int)prod.size() - 1; dd >= (int)d; --dd) {
            FFElt c = prod[dd];
            if (Fq->is_zero(c)) continue;
            prod[dd] = Fq->zero();
            for (u32 i = 0; i < d; ++i)
                prod[dd - d + i] = Fq->sub(prod[dd - d + i], Fq->mul(c, f[i]));
        }
        prod.resize(d, Fq->zero());
        return prod;
    };
    auto powq = [&](FqPoly x) {
        // x^q mod f by square-and-multiply over exponent q
        FqPoly r = {Fq->one()};
        r.resize(d, Fq->zero());
        u64 e = Fq->card;
        while (e) {
            if (e & 1) r = mulmod(r, x);
            x = mulmod(x, x);
            e >>= 1;
        }
        return r;
    };
    FqPoly x(d, Fq->zero());
    if (d == 1)
        x[0] = Fq->zero();
    else
        x[1] = Fq->one();
    FqPoly fr = x;
    std::vector<FqPoly> frob_iterates;  // x^(q^i) for i = 1..d
    for (u32 i = 0; i < d; ++i) {
        fr = powq(fr);
        frob_iterates.push_back(fr);
    }
    if (frob_iterates[d - 1] != x) return false;
    for (u32 r = 2; r <= d; ++r) {
        if (d % r) continue;
        bool isprime = true;
        for (u32 t = 2; t * t <= r; ++t)
            if (r % t == 0) isprime = false;
        if (!isprime) continue;
        if (frob_iterates[d / r - 1] == x) return false;
    }
    return true;
}

FFElt eval_fqpoly_in(const FFieldPtr& big, const Embedding& emb, const FqPoly& f,
                     const FFElt& x) {
    FFElt acc = big->zero(), pw = big->one();
    for (const auto& c : f) {
        acc = big->add(acc, big->mul(pw, emb.map(c)));
        pw = big->mul(pw, x);
    }
    return acc;
}

}  // namespace

u64 ClosedPoint::coeff_code(u32 a_deg) const {
    // lex key: c_0 least significant
    u64 key = 0;
    u64 base = 1;
    u64 qc = q;
    for (u32 i = 0; i < d; ++i) {
        u64 e = 0, pw = 1;
        for (u32 j = 0; j < a_deg; ++j) {
            e += pw * min_poly[i][j];
            pw *= res_field->p;
        }
        key += base * e;
        base *= qc;
    }
    return key;
}

std::vector<ClosedPoint> enumerate_closed_points(u32 p, u32 a, u32 D) {
    if (D < 1) throw std::invalid_argument("D >= 1 required");
    auto Fq = FField::make(p, a);
    std::vector<ClosedPoint> out;
    for (u32 d = 1; d <= D; ++d) {
        auto big = FField::make(p, a * d);
        Embedding emb = Embedding::find(Fq, big);
        // iterate monic degree-d polynomials with nonzero constant term,
        // in lex order of (c_0, ..., c_{d-1}) encodings
        u64 total = 1;
        for (u32 i = 0; i < d; ++i) total *= Fq->card;
        for (u64 code = 0; code < total; ++code) {
            FqPoly f(d + 1, Fq->zero());
            u64 c = code;
            for (u32 i = 0; i < d; ++i) {
                f[i] = Fq->decode(c % Fq->card);
                c /= Fq->card;
            }
            f[d] = Fq->one();
            if (Fq->is_zero(f[0])) continue;  // closed points of G_m only
            if (!fq_irreducible(Fq, f)) continue;
            ClosedPoint pt;
            pt.q = (u32)Fq->card;
            pt.d = d;
            pt.min_poly = f;
            pt.res_field = big;
            // smallest-encoded root in F_{q^d}
            bool found = false;
            for (u64 rc = 1; rc < big->card && !found; ++rc) {
                FFElt x = big->decode(rc);
                if (big->is_zero(eval_fqpoly_in(big, emb, f, x))) {
                    pt.representative = x;
                    found = true;
                }
            }
            if (!found) throw std::logic_error("irreducible poly with no root in F_{q^d}");
            out.push_back(std::move(pt));
        }
    }
    std::sort(out.begin(), out.end(), [a](const ClosedPoint& x, const ClosedPoint& y) {
        if (x.d != y.d) return x.d < y.d;
        return x.coeff_code(a) < y.coeff_code(a);
    });
    return out;
}

ResidueData residue_data(const ClosedPoint& pt) {
    ResidueData r;
    r.field.p = pt.res_field->p;
    // q = p^a
    u32 a = 1;
    {
        u64 q = pt.q, p = pt.res_field->p;
        a = 0;
        while (q > 1) {
            q /= p;
            ++a;
        }
    }
    r.field.a = a;
    r.field.m = pt.d;
    r.field.modulus = pt.res_field->modulus;
    r.lambda_bar = pt.representative;
    r.residue_poly = FpPoly(pt.representative.begin(), pt.representative.end());
    fp_trim(r.residue_poly);
    return r;
}

std::string closed_point_json(const ClosedPoint& pt) {
    std::ostringstream os;
    os << "{\"q\":" << pt.q << ",\"d\":" << pt.d << ",\"min_poly\":[";
    for (size_t i = 0; i < pt.min_poly.size(); ++i) {
        if (i) os << ",";
        if (pt.min_poly[i].size() == 1)
            os << pt.min_poly[i][0];
        else {
            os << "[";
            for (size_t j = 0; j < pt.min_poly[i].size(); ++j)
                os << (j ? "," : "") << pt.min_poly[i][j];
            os << "]";
        }
    }
    os << "]}";
    return os.str();
}

}  // namespace pk

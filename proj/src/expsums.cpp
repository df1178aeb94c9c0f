#include "pk/expsums.hpp"

#include <algorithm>

#include "pk/kernels.hpp"

namespace pk {

namespace {

struct CountSetup {
    FFieldPtr K;        // F_{q^{d m}} absolute
    FFTables tab;
    u64 L = 0;          // |K*|
    u64 lambda_log = 0; // log of embedded lambda_bar
};

CountSetup count_setup(const ClosedPoint& pt, u32 m) {
    CountSetup s;
    u32 p = pt.res_field->p;
    u32 adm = pt.res_field->deg * m;
    s.K = FField::make(p, adm);
    Embedding emb = Embedding::find(pt.res_field, s.K);
    FFElt lam = emb.map(pt.representative);
    s.tab = FFTables::build(s.K);
    s.L = s.K->card - 1;
    u64 code = s.K->encode(lam);
    if (code == 0) throw std::invalid_argument("lambda_bar = 0 is not a point of G_m");
    s.lambda_log = s.tab.log_of[code];
    return s;
}

}  // namespace

CountVector kloosterman_counts(const ClosedPoint& pt, u32 n, u32 m, u64 budget) {
    if (n < 1) throw std::invalid_argument("n >= 1");
    u32 p = pt.res_field->p;
    if (p < n + 3) throw std::invalid_argument("p >= n+3 required");
    CountSetup s = count_setup(pt, m);
    // feasibility of (L)^n enumeration
    double sz = 1;
    for (u32 i = 0; i < n; ++i) sz *= (double)s.L;
    if (sz > (double)budget) throw BudgetExceeded("naive count too large; use the fast path");

    CountVector cv;
    cv.p = p;
    cv.n = n;
    cv.m = m;
    cv.N.assign(p, 0);
    const auto& tr = s.tab.trace_by_log;
    const u64 L = s.L, lamlog = s.lambda_log;
    // iterate tuples of discrete logs; the trace is additive so only the
    // per-coordinate traces and the product log matter
    std::vector<u64> idx(n, 0);
    while (true) {
        u64 tsum = 0, lsum = 0;
        for (u32 i = 0; i < n; ++i) {
            tsum += tr[idx[i]];
            lsum += idx[i];
        }
        u64 invlog = (lamlog + L - lsum % L) % L;
        cv.N[(tsum + tr[invlog]) % p]++;
        u32 k = 0;
        while (k < n && ++idx[k] == L) {
            idx[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    return cv;
}

CountVector kloosterman_counts_fast(const ClosedPoint& pt, u32 n, u32 m) {
    if (n < 1) throw std::invalid_argument("n >= 1");
    u32 p = pt.res_field->p;
    if (p < n + 3) throw std::invalid_argument("p >= n+3 required");
    CountSetup s = count_setup(pt, m);
    const u64 L = s.L;
    // overflow guards for u32 convolution operands
    double mag = 1;
    for (u32 i = 0; i + 1 < n; ++i) mag *= (double)L;
    if (mag >= 4294967296.0) throw BudgetExceeded("convolution magnitudes exceed u32");

    // class-graded vectors over the cyclic group: cur[s][l]
    std::vector<std::vector<u32>> cur(p, std::vector<u32>(L, 0));
    for (u64 l = 0; l < L; ++l) cur[s.tab.trace_by_log[l]][l] = 1;
    std::vector<std::vector<u32>> base = cur;

    for (u32 step = 1; step < n; ++step) {
        std::vector<std::vector<u64>> acc(p, std::vector<u64>(L, 0));
        for (u32 s1 = 0; s1 < p; ++s1)
            for (u32 s2 = 0; s2 < p; ++s2)
                kernels::conv_cyclic_accum(cur[s1].data(), base[s2].data(),
                                           acc[(s1 + s2) % p].data(), L);
        for (u32 t = 0; t < p; ++t)
            for (u64 l = 0; l < L; ++l) cur[t][l] = (u32)acc[t][l];
    }

    CountVector cv;
    cv.p = p;
    cv.n = n;
    cv.m = m;
    cv.N.assign(p, 0);
    const auto& tr = s.tab.trace_by_log;
    for (u64 l = 0; l < L; ++l) {
        u32 t2 = tr[(s.lambda_log + L - l) % L];
        for (u32 t1 = 0; t1 < p; ++t1) cv.N[(t1 + t2) % p] += cur[t1][l];
    }
    return cv;
}

Padic embed_counts(const CountVector& cv, const RingPtr& R, const Padic& zeta) {
    Padic acc = Padic::zero(R);
    Padic zp = Padic::one(R);
    for (u32 t = 0; t < cv.p; ++t) {
        acc += zp.scaled(cv.N[t] % R->pN);
        zp = zp * zeta;
    }
    return acc;
}

LPolynomial l_polynomial_from_counts(const std::vector<CountVector>& counts, u32 n, u32 ad,
                                     const RingPtr& R) {
    if (counts.size() < n + 1) throw std::invalid_argument("need counts for m = 1..n+1");
    if (n + 1 >= R->p) throw PrecisionExhausted("Newton identities need n+1 < p");
    Padic zeta = zeta_p(R);
    // power sums of the reciprocal roots: s_m = (-1)^n Kl_m
    std::vector<Padic> s(n + 2, Padic::zero(R));
    for (u32 m = 1; m <= n + 1; ++m) {
        Padic kl = embed_counts(counts[m - 1], R, zeta);
        s[m] = (n % 2 == 1) ? -kl : kl;
    }
    // Newton: k e_k = sum_{i<k} (-1)^(i-1) e_{k-i} s_i
    std::vector<Padic> e(n + 2, Padic::zero(R));
    e[0] = Padic::one(R);
    for (u32 k = 1; k <= n + 1; ++k) {
        Padic acc = Padic::zero(R);
        for (u32 i = 1; i <= k; ++i) {
            Padic term = e[k - i] * s[i];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        // k < p so this is a unit division
        e[k] = acc.scaled(invmod_u64(k % R->pN, R->pN));
    }
    LPolynomial P;
    P.n = n;
    P.ad = ad;
    P.c.resize(n + 2, Padic::zero(R));
    for (u32 k = 0; k <= n + 1; ++k) {
        P.c[k] = (k % 2 == 1) ? -e[k] : e[k];
    }
    if (P.c[n + 1].is_zero()) throw PrecisionExhausted("degree drop in L-polynomial");
    return P;
}

LPolynomial l_polynomial(const ClosedPoint& pt, u32 n, const RingPtr& R, u64 budget) {
    std::vector<CountVector> counts;
    for (u32 m = 1; m <= n + 1; ++m) {
        double sz = 1;
        u64 L = 1;
        for (u32 i = 0; i < pt.res_field->deg * m; ++i) L *= pt.res_field->p;
        for (u32 i = 0; i < n; ++i) sz *= (double)(L - 1);
        if (sz <= (double)budget)
            counts.push_back(kloosterman_counts(pt, n, m, budget));
        else
            counts.push_back(kloosterman_counts_fast(pt, n, m));
    }
    return l_polynomial_from_counts(counts, n, pt.res_field->deg, R);
}

std::vector<PolygonVertex> newton_polygon(const std::vector<Padic>& coeffs) {
    std::vector<PolygonVertex> pts;
    for (u32 k = 0; k < coeffs.size(); ++k) pts.push_back({k, coeffs[k].ord_pi()});
    // lower convex hull, scanning left to right
    std::vector<PolygonVertex> hull;
    for (const auto& pt : pts) {
        if (pt.ord_pi == ORD_INF) continue;
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // drop b if (a, pt) passes on or below b
            long lhs = (long)(b.ord_pi - a.ord_pi) * (long)(pt.k - a.k);
            long rhs = (long)(pt.ord_pi - a.ord_pi) * (long)(b.k - a.k);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    return hull;
}

std::vector<int> polygon_slopes_scaled(const std::vector<PolygonVertex>& verts) {
    // slopes in ord_pi units per unit of k (multiply ord_p by p-1)
    std::vector<int> slopes;
    for (size_t i = 1; i < verts.size(); ++i) {
        int dk = (int)(verts[i].k - verts[i - 1].k);
        int dv = verts[i].ord_pi - verts[i - 1].ord_pi;
        if (dv % dk != 0) {
            for (int t = 0; t < dk; ++t) slopes.push_back(INT32_MIN);  // non-integral
        } else {
            for (int t = 0; t < dk; ++t) slopes.push_back(dv / dk);
        }
    }
    return slopes;
}

EigenvalueMultiset slope_roots(const LPolynomial& P, const RingPtr& R) {
    const u32 p = R->p;
    auto verts = newton_polygon(P.c);
    auto slopes = polygon_slopes_scaled(verts);
    if (slopes.size() != P.n + 1) throw SlopeCollision("polygon degenerate");
    for (u32 j = 0; j <= P.n; ++j)
        if (slopes[j] != (int)(j * P.ad * (p - 1)))
            throw SlopeCollision("unexpected slope multiset");

    EigenvalueMultiset E;
    E.n = P.n;
    E.ad = P.ad;
    // reversed polynomial P*(X) = X^{n+1} P(1/X) has roots pi_j
    std::vector<Laurent> rev;
    for (u32 k = 0; k <= P.n + 1; ++k) rev.push_back(Laurent(P.c[P.n + 1 - k]));
    for (u32 j = 0; j <= P.n; ++j) {
        // dominant-term approximation: c_j ~ (-1)^j pi_0..pi_{j-1}
        Laurent x0 = -(Laurent(P.c[j + 1]) / Laurent(P.c[j]));
        auto res = newton_root(rev, x0);
        E.pi.push_back(res.root);
        E.loss_ord_pi = std::max(E.loss_ord_pi, res.loss_ord_pi);
        if (res.root.ord_pi() != (int)(j * P.ad * (p - 1)))
            throw SlopeCollision("root valuation mismatch");
        // beta_j = q^{-j d} pi_j; q^{jd} = p^{a d j} = (-1)^(adj) pi^{(p-1) a d j}
        Laurent beta = res.root;
        beta.shift -= (int)((p - 1) * P.ad * j);
        if ((P.ad * j) % 2 == 1) beta = -beta;
        Padic b = beta.normalized().to_padic();
        if ((b - Padic::one(R)).ord_pi() < 1) throw SlopeCollision("beta_j not a 1-unit");
        E.beta.push_back(b);
    }
    return E;
}

}  // namespace pk

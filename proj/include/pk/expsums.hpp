#pragma once

// Kloosterman sums as exact character-count vectors, their L-polynomials
// via Newton's identities, Newton polygons, slope roots pi_j and the 1-unit
// ratios beta_j = q^{-j d} pi_j.

#include "pk/fields.hpp"
#include "pk/laurent.hpp"
#include "pk/padic.hpp"

namespace pk {

struct CountVector {
    u32 p = 5;
    u32 n = 1;
    u32 m = 1;
    std::vector<u64> N;  // size p; N[t] = #{x : absolute trace of f lifts to t}
    u64 total() const {
        u64 s = 0;
        for (u64 v : N) s += v;
        return s;
    }
    bool operator==(const CountVector& o) const { return N == o.N; }
};

inline constexpr u64 DEFAULT_COUNT_BUDGET = 1ull << 26;

// direct enumeration over (F_{q_lambda^m}^*)^n
CountVector kloosterman_counts(const ClosedPoint& pt, u32 n, u32 m,
                               u64 budget = DEFAULT_COUNT_BUDGET);

// graded cyclic convolution path; identical output, no naive budget
CountVector kloosterman_counts_fast(const ClosedPoint& pt, u32 n, u32 m);

// embeds a count vector as sum N_t zeta_p^t in the given ring
Padic embed_counts(const CountVector& cv, const RingPtr& R, const Padic& zeta);

struct LPolynomial {
    std::vector<Padic> c;  // degree n+1, c[0] = 1, over the ring of the point
    u32 n = 1;
    u32 ad = 1;  // a * deg(point)
};

// L-polynomial P(T) = prod (1 - pi_j T) from counts for m = 1..n+1
LPolynomial l_polynomial(const ClosedPoint& pt, u32 n, const RingPtr& R,
                         u64 budget = DEFAULT_COUNT_BUDGET);
LPolynomial l_polynomial_from_counts(const std::vector<CountVector>& counts, u32 n, u32 ad,
                                     const RingPtr& R);

// lower convex hull of (k, ord_pi c_k); slopes rise strictly
struct PolygonVertex {
    u32 k;
    int ord_pi;  // ORD_INF if zero at precision
};
std::vector<PolygonVertex> newton_polygon(const std::vector<Padic>& coeffs);

// slope multiset in ord_p units scaled by (p-1): segment slopes repeated by
// horizontal length
std::vector<int> polygon_slopes_scaled(const std::vector<PolygonVertex>& verts);

struct EigenvalueMultiset {
    std::vector<Laurent> pi;   // pi_0..pi_n, ord_p(pi_j) = j*ad
    std::vector<Padic> beta;   // 1-units q^{-jd} pi_j
    u32 n = 1;
    u32 ad = 1;
    int loss_ord_pi = 0;  // max Hensel loss over the roots
};

EigenvalueMultiset slope_roots(const LPolynomial& P, const RingPtr& R);

}  // namespace pk

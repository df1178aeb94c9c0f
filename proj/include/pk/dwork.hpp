#pragma once

// The deformation-parameter Frobenius structure of the family
// f = x_1 + ... + x_n + Lambda/(x_1...x_n):
//
//   - truncated elements of the weighted spaces (monomials Lambda^r x^v with
//     r >= p^m s(v), s(v) = max(0, -v_i), graded by w = sum v_i + (n+1)r/p^m)
//   - the operators D_i, nabla, psi_x and alpha_m = psi_x^m F_m
//   - reduction onto the rank-(n+1) basis e_j = class of pi^j x_1..x_j by
//     grade descent: per grade the leading transport part (the pi-multiplied
//     terms of D) is solved exactly on the finite grade slice, then the
//     Euler-operator correction drops to the next grade down
//   - the matrix A_1(Lambda) of the cohomological Frobenius, its
//     specializations A_m(lambda), and the congruence/growth verifications

#include <unordered_map>

#include "pk/expsums.hpp"
#include "pk/series.hpp"

namespace pk {

// monomial key: Lambda-degree r (16 bits) and x-exponents v_i (12 bits each,
// biased); n <= 4
constexpr int MONO_VBIAS = 2048;

inline u64 mono_key(u32 r, const int* v, u32 n) {
    u64 k = (u64)r;
    for (u32 i = 0; i < n; ++i) k |= (u64)(u32)(v[i] + MONO_VBIAS) << (16 + 12 * i);
    return k;
}
inline u32 mono_r(u64 key) { return (u32)(key & 0xffff); }
inline int mono_v(u64 key, u32 i) {
    return (int)((key >> (16 + 12 * i)) & 0xfff) - MONO_VBIAS;
}

inline int mono_s(u64 key, u32 n) {
    int s = 0;
    for (u32 i = 0; i < n; ++i) s = std::max(s, -mono_v(key, i));
    return s;
}
inline int mono_wsum(u64 key, u32 n) {
    int w = 0;
    for (u32 i = 0; i < n; ++i) w += mono_v(key, i);
    return w;
}
// scaled grade p^m * w_{p^m}(r, v) = p^m sum v_i + (n+1) r
inline long mono_grade_scaled(u64 key, u32 n, u32 pm) {
    return (long)pm * mono_wsum(key, n) + (long)(n + 1) * mono_r(key);
}
// membership at level m: r >= p^m s(v)
inline bool mono_valid(u64 key, u32 n, u32 pm) {
    return (long)mono_r(key) >= (long)pm * mono_s(key, n);
}

using TruncSeries = std::unordered_map<u64, Padic>;

inline void ts_add(TruncSeries& t, u64 key, const Padic& val) {
    if (val.is_zero()) return;
    auto it = t.find(key);
    if (it == t.end())
        t.emplace(key, val);
    else {
        it->second += val;
        if (it->second.is_zero()) t.erase(it);
    }
}

struct DworkParams {
    u32 p = 5, a = 1, n = 1;
    u32 N_target = 4;   // precision at which A_1 entries are delivered
    u32 N_work = 8;     // working precision with guard digits
    u32 M = 16;         // Lambda truncation of A_1
    long Gmax_scaled = 0;  // grade cap (scaled by p^m) for the reduction
    RingPtr R;          // working ring Z_q[pi], d = 1, precision N_work
    RingPtr R_out;      // delivery ring, precision N_target

    static DworkParams derive(u32 p, u32 a, u32 n, u32 N_target);
    u32 level_pm() const { return p; }  // reduction happens at level m = 1
};

// theta_j of the splitting function (re-exported from the ring layer)
std::vector<Padic> theta_coefficients(const RingPtr& R, u32 J);

// operators on truncated elements at level m (pm = p^m); results are exact
// on monomials within the caller's window
TruncSeries apply_D(const TruncSeries& x, u32 i, u32 n, u32 pm, const RingPtr& R);
TruncSeries apply_nabla(const TruncSeries& x, u32 n, u32 pm, const RingPtr& R);
TruncSeries apply_psi_x(const TruncSeries& x, u32 n, u32 p);

// F(Lambda^{lpow}, x) * input, truncated to scaled grade <= gcap at level
// pm_out after the caller's following psi; used through apply_alpha1
struct SplittingData {
    std::vector<Padic> theta;
    std::vector<int> theta_ord;
    u32 J = 0;
    static SplittingData build(const RingPtr& R, u32 J);
};

// alpha_1 = psi_x . F(Lambda, x): maps level-1 elements to level-p elements;
// keeps output monomials with scaled grade <= gcap_scaled
TruncSeries apply_alpha1(const TruncSeries& x, u32 n, const SplittingData& S, const RingPtr& R,
                         long gcap_scaled);

struct ReduceResult {
    std::vector<LSeries> coords;       // c_0..c_n, length M
    int residual_min_ord = ORD_INF;    // worst dropped-row order (certificate)
    u64 residual_rows = 0;
    u64 solved_rows = 0;
    TruncSeries preimages;             // pi*xi_i keyed by (i, mono); optional
    bool keep_preimages = false;
};

// express x (an element at level p^m, pm_override = p^m, default level p)
// as sum c_j e_j + sum D_i xi_i; unique on the kept window by grade-slice
// transport solves
ReduceResult cohomology_reduce(const TruncSeries& x, const DworkParams& P,
                               bool keep_preimages = false, u32 pm_override = 0);

struct FrobeniusMatrix {
    DworkParams P;
    LSMatrix a;  // (n+1)x(n+1), series length M
    int reduce_residual_ord = ORD_INF;
};

FrobeniusMatrix frobenius_matrix(const DworkParams& P);

// A_m(lambda) = A_1(lambda^{p^{m-1}}) ... A_1(lambda), entries in Rd
using PMatrix = std::vector<std::vector<Padic>>;
PMatrix frobenius_specialize(const FrobeniusMatrix& A, const Padic& lambda, u32 m);

// embed a coefficient of A_1 (t-free by construction) into the ring of a
// closed point
Padic embed_tfree(const Padic& x, const RingPtr& dst);

// exact char poly det(1 - T M) of a small matrix; coefficients c_0..c_dim
std::vector<Padic> charpoly_small(const PMatrix& M);

PMatrix pm_mul(const PMatrix& A, const PMatrix& B);
Padic pm_trace(const PMatrix& A);

// verification helpers
struct CheckRecord {
    std::string name;
    std::string anchor;
    bool pass = true;
    int residual_ord = ORD_INF;  // pi-adic order of the worst residual
    std::string detail;
};

// Lemma 3 shape: constant terms a_ii(0) = p^i, a_ij(0) = 0 for j > i (exact),
// and the specialization congruences at lambda
std::vector<CheckRecord> check_constant_terms(const FrobeniusMatrix& A);
std::vector<CheckRecord> check_specialization_congruences(const FrobeniusMatrix& A,
                                                          const Padic& lambda, u32 m);
// growth: ord_p of the Lambda^r coefficient of a_ij >= (p-1)(n+1)r/p^2 + i
CheckRecord check_growth_bound(const FrobeniusMatrix& A);
// commutation alpha_1 D_{i,Lambda} = p D_{i,Lambda^p} alpha_1 on a random element
CheckRecord check_commutation(const DworkParams& P, u64 seed);
// full dual-pipeline comparison at one closed point
struct TraceFormulaReport {
    CheckRecord det_match;       // det(1 - T A_{ad}(lambda)) vs L-polynomial
    CheckRecord trace_m1, trace_m2;  // Kl_m = (-1)^n Tr(A^m)
    LPolynomial from_counts;
    std::vector<Padic> from_frobenius;
};
TraceFormulaReport trace_formula_check(const FrobeniusMatrix& A, const ClosedPoint& pt,
                                       u32 n, u32 N_compare, u64 budget = DEFAULT_COUNT_BUDGET);

// Teichmueller lift of a point's representative in its p-adic ring
Padic point_teichmueller(const ClosedPoint& pt, const RingPtr& Rd);

}  // namespace pk

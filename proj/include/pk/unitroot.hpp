#pragma once

// Euler-product L-functions of linear-algebra operations on the family's
// eigenvalue data, truncated nuclear operators from the infinite symmetric
// powers, Fredholm characteristic series, unit roots, and the theorem-level
// verifiers built from them.

#include "pk/multilinear.hpp"

namespace pk {

// per-point eigenvalue data, computed from the character-sum pipeline
struct PointData {
    ClosedPoint pt;
    RingPtr Rd;
    EigenvalueMultiset E;
};

std::vector<PointData> family_points(u32 p, u32 a, u32 n, u32 D, u32 N,
                                     u64 budget = DEFAULT_COUNT_BUDGET);

// operation expression over the family: wedge/sym/tensor of eigenvalue
// multisets
struct OpExpr {
    enum class Kind { Wedge, Sym, Tensor };
    Kind kind = Kind::Wedge;
    u32 arg = 0;
    std::vector<OpExpr> kids;  // Wedge: 0 kids = base family, 1 kid allowed; Sym: 1; Tensor: 2+

    static OpExpr wedge(u32 i) { return {Kind::Wedge, i, {}}; }
    static OpExpr wedge_of(u32 i, OpExpr kid) { return {Kind::Wedge, i, {std::move(kid)}}; }
    static OpExpr sym(u32 k, OpExpr kid) { return {Kind::Sym, k, {std::move(kid)}}; }
    static OpExpr tensor(OpExpr a, OpExpr b) {
        return {Kind::Tensor, 0, {std::move(a), std::move(b)}};
    }
};

// explicit multiset of an expression at one point (throws BudgetExceeded
// when it would be too large); power sums avoid materializing Sym
std::vector<Laurent> op_elements(const OpExpr& e, const std::vector<Laurent>& base, u64 budget);
Laurent op_power_sum(const OpExpr& e, const std::vector<Laurent>& base, u32 m, u64 budget);
// min ord_pi over the multiset (exact valuation arithmetic)
int op_min_ord(const OpExpr& e, const std::vector<Laurent>& base, u64 budget);

struct EulerProduct {
    std::vector<Padic> c;  // coefficients of T^0..T^D over the base ring
    u32 D = 0;
};

EulerProduct euler_lfunction_op(const OpExpr& e, const std::vector<PointData>& pts, u32 D,
                                const RingPtr& R1, u64 budget = DEFAULT_COUNT_BUDGET);
// unit-root family: factors 1/(1 - (beta_j)^kappa T^deg)
EulerProduct euler_lfunction_unit(u32 j, const PadicInt& kappa,
                                  const std::vector<PointData>& pts, u32 D, const RingPtr& R1);
// zeta of G_m as exact integers: (1 - T)/(1 - qT) assembled from the points
std::vector<i64> zeta_gm_integer(const std::vector<ClosedPoint>& pts, u32 q, u32 D);

// ---- nuclear truncations ----

struct SparseMat {
    u32 dim = 0;
    std::vector<std::vector<std::pair<u32, Padic>>> rows;
};

// one side of the operator: a matrix of Lambda-series on a monomial basis
struct SeriesOp {
    u32 dim = 0;
    u32 M = 1;
    std::vector<std::vector<LSeries>> e;
};

struct TruncatedNuclearOperator {
    u32 j = 0;
    u32 Rblk = 4, K = 4, M = 8;
    RingPtr R;
    MonoBasis basisL, basisR;                  // basisR trivial when single-sided
    std::vector<std::pair<u32, u32>> pairs;    // tensor basis, combined length <= K
    SparseMat F;                               // folded matrix B^{(q r - s)}
    bool single = false;
};

// beta^{(j,infty,kappa)} (or the finite (k', k) version when finite_kp/k >= 0)
TruncatedNuclearOperator nuclear_truncation(const FrobeniusMatrix& A, u32 j,
                                            const PadicInt& kappa, i64 finite_kp, i64 finite_k,
                                            u32 Rblk, u32 K, u32 M, const RingPtr& R);

// dual operator beta^{*(j,k',k)} on the dual monomial blocks (always finite k)
TruncatedNuclearOperator nuclear_truncation_dual(const FrobeniusMatrix& A, u32 j, u32 kp, u32 k,
                                                 u32 Rblk, u32 M, const RingPtr& R);

struct CharSeries {
    std::vector<Padic> c;   // det(1 - T F) mod T^{D'+1}
    std::vector<Padic> cq;  // det(1 - q T F)
    int newton_loss_ord = 0;
};

CharSeries char_series(const SparseMat& F, u32 Dprime, u32 q, const RingPtr& R);

struct UnitRootResult {
    Padic root;
    int ord_root_minus_1 = 0;  // pi-adic
    int loss_ord = 0;
};
UnitRootResult unit_root(const CharSeries& cs, const RingPtr& R);

// k_s = (kappa mod p^s) + p^s and k'_s = (-kappa mod p^s) + p^s
struct KappaSeq {
    std::vector<u32> k, kp;
};
KappaSeq kappa_sequence(const PadicInt& kappa, u32 s_max);

// dual fixed vector: the beta*-column at (e*_0)^{k'} x (e*_0)^k equals the
// exact unit column
CheckRecord check_dual_fixed_vector(const FrobeniusMatrix& A, u32 j, u32 kp, u32 k, u32 M,
                                    const RingPtr& R);

struct TheoremReport {
    std::vector<CheckRecord> checks;
    CharSeries cs_small, cs_big;
    UnitRootResult root_small, root_big;
    bool fatal = false;
};

// (a) char series = 1 - T mod pi with a unique slope-0 root, at two
// truncations; (b) ord(root - 1) >= 2 and strictly improving; (c) Euler
// product vs Fredholm quotient convergence in s; (d) dual fixed vector;
// (e) primal/dual char series agreement
TheoremReport verify_theorems(const FrobeniusMatrix& A, u32 j, const PadicInt& kappa,
                              const std::vector<PointData>& pts, u32 R1blk, u32 K1, u32 R2blk,
                              u32 K2, u32 M, u32 Dp, u32 s_max);

}  // namespace pk

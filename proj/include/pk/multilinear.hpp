#pragma once

// Exterior powers of the Frobenius structure (normalized by
// p^{-m i(i-1)/2}), symmetric powers, the infinite symmetric powers
// [phi_{m,i}]_{infty,kappa} acting on power series in the non-distinguished
// wedge directions, the dual operators obtained by transposition, and the
// pairings that make them adjoint.

#include "pk/dwork.hpp"
#include "pk/laurent.hpp"

namespace pk {

// I_i: ascending index tuples 0 <= u_1 < ... < u_i <= n in lex order;
// the first tuple is (0, 1, .., i-1)
struct WedgeBasis {
    u32 n = 1, i = 1, l = 1;
    std::vector<std::vector<u32>> tuples;
    static WedgeBasis make(u32 n, u32 i);
};

// p^{-norm_m i(i-1)/2} wedge^i of a series matrix (norm_m = m of the level)
LSMatrix wedge_series(const LSMatrix& A, const WedgeBasis& W, u32 norm_m, u32 M);
PMatrix wedge_at(const PMatrix& A, const WedgeBasis& W, u32 norm_m);

// normalized wedge of A_m(lambda) computed as the product of m normalized
// level-1 wedges (avoids dividing by large p-powers at once)
PMatrix wedge_of_specialized(const FrobeniusMatrix& A, const Padic& lambda, u32 m,
                             const WedgeBasis& W);

// degree-k monomials over l letters (exponent vectors), tuple-lex order
struct SymBasis {
    u32 l = 1, k = 1;
    std::vector<std::vector<u8>> expo;
    static SymBasis make(u32 l, u32 k);
    u32 find(const std::vector<u8>& e) const;
    u32 dim() const { return (u32)expo.size(); }
};

PMatrix sym_at(const PMatrix& B, const SymBasis& S);
std::vector<std::vector<LSeries>> sym_series(const LSMatrix& B, const SymBasis& S, u32 M);

// monomials of length <= K in nv variables, ordered by length then lex
struct MonoBasis {
    u32 nv = 1, K = 1;
    std::vector<std::vector<u8>> expo;
    static MonoBasis make(u32 nv, u32 K);
    int find(const std::vector<u8>& e) const;
    u32 dim() const { return (u32)expo.size(); }
    u32 length(u32 idx) const;
};

// matrix of [phi]_{infty,kappa} (or [phi]_k when finite_k >= 0) on the
// length-<= K monomial basis, entries truncated Lambda-series
struct InfSymMatrix {
    MonoBasis basis;
    u32 M = 1;
    RingPtr R;
    std::vector<std::vector<LSeries>> e;  // [target][source]
};

InfSymMatrix inf_sym_matrix(const LSMatrix& W, const WedgeBasis& WB, const PadicInt& kappa,
                            i64 finite_k, u32 K, u32 M, const RingPtr& R);

// dual side: matrix of phi*_{1,i} is the transpose of the normalized wedge
LSMatrix transpose_series(const LSMatrix& B);
PMatrix transpose_at(const PMatrix& B);

// <mono, mono*>_k = prod_t mult_t! / k!, an exact rational carried as a
// pi-shifted unit
Laurent sym_mono_pairing(const SymBasis& S, u32 idx, const RingPtr& R);

// verification bundles
std::vector<CheckRecord> check_lemma1(const FrobeniusMatrix& A, const ClosedPoint& pt);
std::vector<CheckRecord> check_lemma2(const FrobeniusMatrix& A);
std::vector<CheckRecord> check_corollary_level_m(const FrobeniusMatrix& A, const Padic& lambda,
                                                 u32 m);
CheckRecord check_wedge_functoriality(u64 seed, const RingPtr& R);
CheckRecord check_sym_eigenvalues(u64 seed, const RingPtr& R);
CheckRecord check_adjoint_wedge(const FrobeniusMatrix& A, const ClosedPoint& pt, u64 seed);
CheckRecord check_adjoint_sym(const FrobeniusMatrix& A, const ClosedPoint& pt, u32 k, u64 seed);
// alpha* = F(Lambda,x) Phi_x applied to explicitly constructed dual basis
// kernels, n = 1 only: guards the transpose orientation
CheckRecord check_alpha_star_orientation(const FrobeniusMatrix& A, u32 M_spot, u32 N_spot);
// [phi_{m,i}]_k restricted to length <= k equals Sym^k phi under the
// identification e_{u0}^{k-r} g... <-> monomials
CheckRecord check_infsym_vs_sym(const FrobeniusMatrix& A, u32 i, u32 k, u32 K, u32 M);
// entrywise convergence [phi]_{k_s} -> [phi]_{infty,kappa}
struct ConvergenceSample {
    u32 s;
    u32 k_s;
    int min_diff_ord;  // over common entries
};
std::vector<ConvergenceSample> check_infsym_limit(const FrobeniusMatrix& A, u32 i,
                                                  const PadicInt& kappa, u32 s_max, u32 K, u32 M);

}  // namespace pk

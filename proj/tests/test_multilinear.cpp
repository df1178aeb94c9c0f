#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pk/multilinear.hpp"

using namespace pk;

TEST_CASE("wedge basics") {
    auto R = PadicRing::make(5, 1, 1, 6);
    // diag(1, p), i = 2, m = 1: scalar p^{-1} * (1*p) = 1
    PMatrix A(2, std::vector<Padic>(2, Padic::zero(R)));
    A[0][0] = Padic::one(R);
    A[1][1] = Padic::from_int(R, 5);
    auto W = WedgeBasis::make(1, 2);
    CHECK(W.l == 1);
    PMatrix B = wedge_at(A, W, 1);
    CHECK(B[0][0] == Padic::one(R));
}

TEST_CASE("wedge functoriality and sym eigenvalues on synthetic matrices") {
    auto R = PadicRing::make(5, 1, 1, 6);
    CHECK(check_wedge_functoriality(1001, R).pass);
    CHECK(check_sym_eigenvalues(1002, R).pass);
}

TEST_CASE("sym basis dims") {
    CHECK(SymBasis::make(2, 3).dim() == 4);   // C(4,3)
    CHECK(SymBasis::make(3, 2).dim() == 6);
    // identity stays identity
    auto R = PadicRing::make(5, 1, 1, 4);
    PMatrix I(2, std::vector<Padic>(2, Padic::zero(R)));
    I[0][0] = I[1][1] = Padic::one(R);
    auto S = SymBasis::make(2, 3);
    PMatrix SI = sym_at(I, S);
    for (u32 a = 0; a < 4; ++a)
        for (u32 b = 0; b < 4; ++b) CHECK(SI[a][b] == (a == b ? Padic::one(R) : Padic::zero(R)));
}

TEST_CASE("mono basis ordering: length then lex") {
    auto B = MonoBasis::make(2, 3);
    CHECK(B.expo[0] == std::vector<u8>{0, 0});
    CHECK(B.expo[1] == std::vector<u8>{1, 0});
    CHECK(B.expo[2] == std::vector<u8>{0, 1});
    CHECK(B.expo[3] == std::vector<u8>{2, 0});
    CHECK(B.dim() == 1 + 2 + 3 + 4);
}

TEST_CASE("pairing values") {
    auto R = PadicRing::make(5, 1, 1, 6);
    auto S = SymBasis::make(2, 2);
    // <e0 e0, *> = 2!/2! = 1 ; <e0 e1, *> = 1/2
    u32 i00 = S.find({2, 0});
    u32 i01 = S.find({1, 1});
    Laurent w00 = sym_mono_pairing(S, i00, R);
    Laurent w01 = sym_mono_pairing(S, i01, R);
    CHECK(laurent_diff_ord(w00, Laurent::one(R)) == ORD_INF);
    Laurent half = Laurent(Padic::from_int(R, 2)).inv();
    CHECK(laurent_diff_ord(w01, half) == ORD_INF);
    // k = p case: denominator p-part handled as negative shift
    auto S5 = SymBasis::make(2, 5);
    Laurent w = sym_mono_pairing(S5, S5.find({5, 0}), R);  // 5!/5! = 1
    CHECK(laurent_diff_ord(w, Laurent::one(R)) == ORD_INF);
    Laurent w2 = sym_mono_pairing(S5, S5.find({4, 1}), R);  // 4!/5! = 1/5
    CHECK(w2.ord_pi() == -4);
}

TEST_CASE("lemma 1 and lemma 2 shapes, n = 1") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    for (auto& c : check_lemma2(A)) {
        INFO(c.name);
        CHECK(c.pass);
    }
    auto pts = enumerate_closed_points(5, 1, 2);
    for (auto& pt : pts) {
        if (pt.d == 2 && pt.coeff_code(1) > 30) continue;  // a couple of degree-2 reps
        for (auto& c : check_lemma1(A, pt)) {
            INFO(c.name << " det-ord " << c.residual_ord);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("corollary at level m") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    auto Rd = PadicRing::make(5, 1, 2, 4);
    Padic lam = Padic::one(Rd);
    for (auto& c : check_corollary_level_m(A, lam, 2)) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("adjointness at a point") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    auto pts = enumerate_closed_points(5, 1, 1);
    CHECK(check_adjoint_wedge(A, pts[0], 7).pass);
    CHECK(check_adjoint_sym(A, pts[0], 2, 8).pass);
    CHECK(check_adjoint_sym(A, pts[1], 5, 9).pass);
}

TEST_CASE("alpha* orientation spot check") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    auto c = check_alpha_star_orientation(A, 4, 2);
    INFO("residual ord " << c.residual_ord);
    CHECK(c.pass);
}

TEST_CASE("infinite symmetric power: scalar case and finite-k identification") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    // n=1, i=2: one wedge direction, no g variables; operator is a 1x1 scalar
    auto W2 = WedgeBasis::make(1, 2);
    LSMatrix Wser = wedge_series(A.a, W2, 1, P.M);
    PadicInt kap = PadicInt::from_i64(5, 3, 20);
    InfSymMatrix F = inf_sym_matrix(Wser, W2, kap, -1, 4, P.M, P.R_out);
    CHECK(F.basis.dim() == 1);
    // scalar (p^{-1} det A)^kappa: for integer kappa = 3, cube of the scalar
    LSeries w = Wser[0][0];
    LSeries w3 = ls_mul(ls_mul(w, w, P.M), w, P.M);
    for (u32 r = 0; r < P.M; ++r) CHECK(F.e[0][0][r] == w3[r]);

    CHECK(check_infsym_vs_sym(A, 1, 3, 4, 8).pass);
}

TEST_CASE("infsym limit: [phi]_{k_s} -> [phi]_{infty,kappa}") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    PadicInt kap = PadicInt::from_i64(5, 1, 20);
    auto samples = check_infsym_limit(A, 1, kap, 2, 4, 8);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].k_s == 6);
    CHECK(samples[1].k_s == 26);
    // entrywise orders improve with s
    CHECK(samples[0].min_diff_ord >= 1);
    CHECK(samples[1].min_diff_ord > samples[0].min_diff_ord);
}

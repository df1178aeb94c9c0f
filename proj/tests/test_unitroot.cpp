#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pk/unitroot.hpp"

using namespace pk;

TEST_CASE("kappa sequences") {
    PadicInt km1 = PadicInt::from_i64(5, -1, 12);
    auto s1 = kappa_sequence(km1, 2);
    CHECK(s1.k[0] == 9);        // 2*5 - 1
    CHECK(s1.k[1] == 49);       // 2*25 - 1
    PadicInt k1 = PadicInt::from_i64(5, 1, 12);
    auto s2 = kappa_sequence(k1, 2);
    CHECK(s2.k[0] == 6);
    CHECK(s2.k[1] == 26);
    CHECK(s2.kp[0] == 9);       // -1 mod 5eq
    // ord_p(k_s - kappa) >= s by construction
    CHECK((s2.k[0] - 1) % 5 == 0);
    CHECK((s2.k[1] - 1) % 25 == 0);
}

TEST_CASE("zeta of G_m as exact integers") {
    auto pts = enumerate_closed_points(5, 1, 3);
    auto z = zeta_gm_integer(pts, 5, 3);
    CHECK(z == std::vector<i64>{1, 4, 20, 100});
}

TEST_CASE("kappa = 0 unit-root family collapses to zeta") {
    auto R1 = PadicRing::make(5, 1, 1, 6);
    auto pts = family_points(5, 1, 1, 3, 6);
    PadicInt k0 = PadicInt::from_i64(5, 0, 12);
    for (u32 j : {0u, 1u}) {
        auto L = euler_lfunction_unit(j, k0, pts, 3, R1);
        CHECK(L.c[0] == Padic::one(R1));
        CHECK(L.c[1] == Padic::from_int(R1, 4));
        CHECK(L.c[2] == Padic::from_int(R1, 20));
        CHECK(L.c[3] == Padic::from_int(R1, 100));
    }
}

TEST_CASE("euler product of the identity operation has integral coefficients") {
    auto R1 = PadicRing::make(5, 1, 1, 4);
    auto pts = family_points(5, 1, 1, 2, 4);
    auto L = euler_lfunction_op(OpExpr::wedge(1), pts, 2, R1);
    CHECK(L.c[0] == Padic::one(R1));
    for (auto& c : L.c) CHECK((c.is_zero() || c.ord_pi() >= 0));
}

TEST_CASE("op engine: power sums match explicit elements") {
    auto R1 = PadicRing::make(5, 1, 1, 5);
    auto pts = family_points(5, 1, 2, 1, 5);
    auto& pd = pts[0];
    std::vector<Laurent> base(pd.E.pi.begin(), pd.E.pi.end());
    OpExpr e = OpExpr::sym(3, OpExpr::wedge(2));
    auto els = op_elements(e, base, 100000);
    for (u32 m = 1; m <= 2; ++m) {
        Laurent direct = Laurent::zero(pd.Rd);
        for (auto& t : els) {
            Laurent x = Laurent::one(pd.Rd);
            for (u32 s = 0; s < m; ++s) x = x * t;
            direct = direct + x;
        }
        Laurent viah = op_power_sum(e, base, m, 100000);
        CHECK(laurent_diff_ord(direct, viah) >= (int)(4 * (pd.Rd->N - 1)));
    }
    // min ord via closed form equals min over explicit elements
    int mo = op_min_ord(e, base, 100000);
    int expl = ORD_INF;
    for (auto& t : els) expl = std::min(expl, t.ord_pi());
    CHECK(mo == expl);
}

TEST_CASE("wedge correction factors have positive order (remark positivity)") {
    auto pts = family_points(5, 1, 2, 1, 4);
    for (auto& pd : pts) {
        std::vector<Laurent> base(pd.E.pi.begin(), pd.E.pi.end());
        for (u32 iota = 2; iota <= 3; ++iota) {
            OpExpr e = OpExpr::wedge_of(iota, OpExpr::wedge(1));
            CHECK(op_min_ord(e, base, 100000) > 0);
        }
    }
}

TEST_CASE("char series basics") {
    auto R = PadicRing::make(5, 1, 1, 6);
    // F = [1]: det(1 - TF) = 1 - T
    SparseMat F;
    F.dim = 1;
    F.rows.assign(1, {{0u, Padic::one(R)}});
    auto cs = char_series(F, 3, 5, R);
    CHECK(cs.c[0] == Padic::one(R));
    CHECK(cs.c[1] == -Padic::one(R));
    CHECK(cs.c[2].is_zero());
    // det(1 - qTF) rescales
    CHECK(cs.cq[1] == -Padic::from_int(R, 5));
    auto ur = unit_root(cs, R);
    CHECK(ur.root == Padic::one(R));
}

TEST_CASE("unit root of (1-T)(1-pT)") {
    auto R = PadicRing::make(5, 1, 1, 6);
    CharSeries cs;
    cs.c = {Padic::one(R), Padic::from_int(R, -6), Padic::from_int(R, 5)};
    cs.cq = cs.c;
    auto ur = unit_root(cs, R);
    CHECK((ur.root - Padic::one(R)).ord_pi() >= (int)(4 * (R->N - 1)));
    // two unit roots must be refused
    CharSeries bad;
    bad.c = {Padic::one(R), Padic::from_int(R, -2), Padic::one(R)};
    bad.cq = bad.c;
    CHECK_THROWS_AS(unit_root(bad, R), MultipleUnitRoots);
}

TEST_CASE("nuclear operator: mod-pi corner form and block stability") {
    auto P = DworkParams::derive(5, 1, 1, 6);
    auto A = frobenius_matrix(P);
    PadicInt kap = PadicInt::from_i64(5, 1, 24);
    auto T = nuclear_truncation(A, 0, kap, -1, -1, 4, 4, P.M, P.R_out);
    // B^{(0)}-block (r=0, s=0): identity at the empty monomial mod pi, zero
    // elsewhere mod pi
    u32 pb = (u32)T.pairs.size();
    for (u32 row = 0; row < pb; ++row) {
        Padic got = Padic::zero(P.R_out);
        for (auto& [c2, v] : T.F.rows[row])
            if (c2 == 0) got = v;
        if (row == 0)
            CHECK((got - Padic::one(P.R_out)).ord_pi() >= 1);
        else
            CHECK(got.ord_pi() >= 1);
    }
    // doubling R leaves low blocks unchanged
    auto T2 = nuclear_truncation(A, 0, kap, -1, -1, 8, 4, P.M, P.R_out);
    for (u32 row = 0; row < std::min(T.F.dim, T2.F.dim); ++row) {
        auto a = T.F.rows[row];
        std::vector<std::pair<u32, Padic>> b;
        for (auto& [c2, v] : T2.F.rows[row])
            if (c2 < T.F.dim) b.push_back({c2, v});
        CHECK(a.size() == b.size());
        for (size_t t2 = 0; t2 < std::min(a.size(), b.size()); ++t2) {
            CHECK(a[t2].first == b[t2].first);
            CHECK(a[t2].second == b[t2].second);
        }
    }
    // n=1, j=1: the j+1 = 2 side is scalar; operator dimensions collapse
    auto Tj1 = nuclear_truncation(A, 1, kap, -1, -1, 4, 4, P.M, P.R_out);
    CHECK(Tj1.basisR.dim() == 1);
    CHECK(Tj1.pairs.size() == Tj1.basisL.dim());
}

TEST_CASE("theorem shadows for (n,p,j,kappa) = (1,5,0,1)") {
    auto P = DworkParams::derive(5, 1, 1, 8);
    auto A = frobenius_matrix(P);
    PadicInt kap = PadicInt::from_i64(5, 1, 30);
    auto pts = family_points(5, 1, 1, 3, 8);
    auto rep = verify_theorems(A, 0, kap, pts, 4, 4, 8, 6, P.M, 5, 2);
    for (auto& c : rep.checks) {
        INFO(c.name << " [" << c.anchor << "] " << c.detail << " residual "
                    << c.residual_ord);
        CHECK(c.pass);
    }
    CHECK(!rep.fatal);
    // spec example: root = 1 mod p^2 at R=4 and mod p^3 at R=8
    CHECK(rep.root_small.ord_root_minus_1 >= (int)(2 * 4));
    CHECK(rep.root_big.ord_root_minus_1 >= (int)(3 * 4));
}

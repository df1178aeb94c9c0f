#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pk/dwork.hpp"

using namespace pk;

TEST_CASE("weight window count for n=1, W=3") {
    // monomials with w(v) <= 3 for n=1: v in {-3..3}, 7 of them
    int count = 0;
    for (int v = -10; v <= 10; ++v) {
        int s = std::max(0, -v);
        int w = v + 2 * s;
        if (w <= 3) ++count;
    }
    CHECK(count == 7);
}

TEST_CASE("operator basics: D_i(1), psi_x rules") {
    auto P = DworkParams::derive(5, 1, 2, 3);
    const RingPtr& R = P.R;
    TruncSeries one;
    int v0[4] = {0, 0};
    one[mono_key(0, v0, 2)] = Padic::one(R);
    // D_i(1) = pi x_i - pi Lambda^{p^m} /(x1..xn), level m=1
    TruncSeries d = apply_D(one, 0, 2, 5, R);
    CHECK(d.size() == 2);
    int vx[4] = {1, 0};
    int vinv[4] = {-1, -1};
    CHECK(d.at(mono_key(0, vx, 2)) == Padic::pi(R));
    CHECK(d.at(mono_key(5, vinv, 2)) == -Padic::pi(R));
    // psi_x keeps exponents divisible by p
    TruncSeries t;
    int va[4] = {5, -10};
    int vb[4] = {3, 5};
    t[mono_key(2, va, 2)] = Padic::one(R);
    t[mono_key(1, vb, 2)] = Padic::one(R);
    TruncSeries pt = apply_psi_x(t, 2, 5);
    CHECK(pt.size() == 1);
    int vq[4] = {1, -2};
    CHECK(pt.at(mono_key(2, vq, 2)) == Padic::one(R));
}

TEST_CASE("reduce: basis representatives come back as unit coordinates") {
    auto P = DworkParams::derive(5, 1, 1, 3);
    const RingPtr& R = P.R;
    for (u32 j = 0; j <= 1; ++j) {
        TruncSeries ej;
        int v[4] = {(int)(j >= 1), 0};
        ej[mono_key(0, v, 1)] = Padic::one(R).mul_pi_pow(j);
        auto red = cohomology_reduce(ej, P);
        for (u32 i = 0; i <= 1; ++i) {
            for (u32 r = 0; r < P.M; ++r) {
                Padic expect = (i == j && r == 0) ? Padic::one(R).mul_pi_pow(j) : Padic::zero(R);
                CHECK(red.coords[i][r] == expect);
            }
        }
    }
}

TEST_CASE("reduce: nabla^j(1) lands on e_j (level 0 relations)") {
    for (u32 n : {1u, 2u}) {
        auto P = DworkParams::derive(5, 1, n, 3);
        const RingPtr& R = P.R;
        TruncSeries cur;
        int v0[4] = {0, 0, 0};
        cur[mono_key(0, v0, n)] = Padic::one(R);
        for (u32 j = 1; j <= n; ++j) {
            cur = apply_nabla(cur, n, 1, R);
            auto red = cohomology_reduce(cur, P, false, 1);
            for (u32 i = 0; i <= n; ++i) {
                Padic lead = red.coords[i][0];
                if (i == j)
                    CHECK(lead == Padic::one(R).mul_pi_pow(j));
                else
                    CHECK(lead.is_zero());
                for (u32 r = 1; r < P.M; ++r) CHECK(red.coords[i][r].is_zero());
            }
        }
    }
}

TEST_CASE("reduce at level p: nabla^j(1) picks up the p^{jm} twist") {
    // with relations at level p^m the class of nabla^j(1) is p^{jm} e_j
    auto P = DworkParams::derive(5, 1, 1, 3);
    const RingPtr& R = P.R;
    TruncSeries cur;
    int v0[4] = {0};
    cur[mono_key(0, v0, 1)] = Padic::one(R);
    cur = apply_nabla(cur, 1, 5, R);
    auto red = cohomology_reduce(cur, P);
    CHECK(red.coords[1][0] == Padic::one(R).mul_pi_pow(1).scaled(5));
    CHECK(red.coords[0][0].is_zero());
}

TEST_CASE("reduce: image of D_i reduces to zero") {
    for (u32 n : {1u, 2u}) {
        auto P = DworkParams::derive(5, 1, n, 3);
        const RingPtr& R = P.R;
        std::mt19937_64 rng(17 + n);
        TruncSeries xi;
        int v[4];
        for (int t = 0; t < 5; ++t) {
            u32 r = rng() % 4;
            bool ok = true;
            for (u32 i = 0; i < n; ++i) {
                v[i] = (int)(rng() % 7) - 3;
                if (-v[i] * 5 > (int)r) ok = false;  // level-p membership
            }
            if (!ok) continue;
            ts_add(xi, mono_key(r, v, n), Padic::from_int(R, (i64)(rng() % 50 + 1)));
        }
        for (u32 i = 0; i < n; ++i) {
            TruncSeries dxi = apply_D(xi, i, n, 5, R);
            auto red = cohomology_reduce(dxi, P);
            for (u32 c = 0; c <= n; ++c)
                for (u32 r = 0; r < P.M; ++r) CHECK(red.coords[c][r].is_zero());
        }
    }
}

TEST_CASE("frobenius matrix n=1: constant terms and growth") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    for (auto& c : check_constant_terms(A)) {
        INFO(c.name);
        CHECK(c.pass);
    }
    auto g = check_growth_bound(A);
    INFO(g.detail);
    CHECK(g.pass);
}

TEST_CASE("frobenius matrix n=2: constant terms and growth") {
    auto P = DworkParams::derive(5, 1, 2, 4);
    auto A = frobenius_matrix(P);
    for (auto& c : check_constant_terms(A)) {
        INFO(c.name);
        CHECK(c.pass);
    }
    auto g = check_growth_bound(A);
    INFO(g.detail);
    CHECK(g.pass);
}

TEST_CASE("commutation alpha_1 D = p D' alpha_1") {
    for (u32 n : {1u, 2u}) {
        auto P = DworkParams::derive(5, 1, n, 3);
        auto c = check_commutation(P, 1234 + n);
        CHECK(c.pass);
    }
}

TEST_CASE("truncation stability of A_1") {
    auto P1 = DworkParams::derive(5, 1, 1, 3);
    auto P2 = P1;
    P2.Gmax_scaled += 2 * 5;
    P2.M += 5;
    auto A1 = frobenius_matrix(P1);
    auto A2 = frobenius_matrix(P2);
    int floor = (int)(4 * P1.N_target);  // delivered precision
    for (u32 i = 0; i <= 1; ++i)
        for (u32 j = 0; j <= 1; ++j)
            for (u32 r = 0; r < P1.M; ++r) {
                int o = (A1.a[i][j][r] - A2.a[i][j][r]).ord_pi();
                CHECK(o >= floor);
            }
}

TEST_CASE("specialization congruences at lambda = 1 and A_2 two ways") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    Padic lam = Padic::one(P.R_out);
    for (auto& c : check_specialization_congruences(A, lam, 1)) {
        INFO(c.name);
        CHECK(c.pass);
    }
    // A_2(lambda) = A_1(lambda^p) A_1(lambda)
    PMatrix A2 = frobenius_specialize(A, lam, 2);
    PMatrix left = frobenius_specialize(A, lam.pow_u64(5), 1);
    PMatrix right = frobenius_specialize(A, lam, 1);
    PMatrix prod = pm_mul(left, right);
    for (u32 i = 0; i <= 1; ++i)
        for (u32 j = 0; j <= 1; ++j) CHECK(A2[i][j] == prod[i][j]);
}

TEST_CASE("keystone: trace formula at p=5 a=1 n=1 lambda=1") {
    auto P = DworkParams::derive(5, 1, 1, 4);
    auto A = frobenius_matrix(P);
    auto pts = enumerate_closed_points(5, 1, 1);
    for (auto& pt : pts) {
        if (pt.representative != pt.res_field->from_u32(1)) continue;
        auto rep = trace_formula_check(A, pt, 1, 4);
        INFO("residual ord " << rep.det_match.residual_ord);
        CHECK(rep.det_match.pass);
        CHECK(rep.trace_m1.pass);
        CHECK(rep.trace_m2.pass);
    }
}

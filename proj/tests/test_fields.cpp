#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "pk/fields.hpp"
#include "pk/padic.hpp"

using namespace pk;

TEST_CASE("trace on prime field and linearity") {
    auto F = FField::make(5, 3);
    // x in F_p: trace = deg * x
    for (u32 v = 0; v < 5; ++v) CHECK(F->trace_to_prime(F->from_u32(v)) == (3 * v) % 5);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        FFElt x = F->decode(rng() % F->card), y = F->decode(rng() % F->card);
        u32 txy = F->trace_to_prime(F->add(x, y));
        CHECK(txy == (F->trace_to_prime(x) + F->trace_to_prime(y)) % 5);
        CHECK(F->trace_to_prime(F->frobenius(x)) == F->trace_to_prime(x));
    }
}

TEST_CASE("trace in F_25 with modulus t^2 - 2") {
    auto F = FField::make(5, 2, {3, 0, 1});  // t^2 + 3 = t^2 - 2
    FFElt t = F->decode(5);                  // the generator t
    CHECK(F->trace_to_prime(t) == 0);
}

TEST_CASE("closed point enumeration q=5") {
    auto pts = enumerate_closed_points(5, 1, 3);
    u32 n1 = 0, n2 = 0, n3 = 0;
    for (auto& pt : pts) {
        if (pt.d == 1) ++n1;
        if (pt.d == 2) ++n2;
        if (pt.d == 3) ++n3;
    }
    CHECK(n1 == 4);
    CHECK(n2 == 10);
    CHECK(n3 == 40);
    // orbit counting: sum_{d | m} d * #CP_d = q^m - 1
    CHECK(1 * n1 == 5 - 1);
    CHECK(1 * n1 + 2 * n2 == 25 - 1);
    CHECK(1 * n1 + 3 * n3 == 125 - 1);
}

TEST_CASE("min polys distinct, irreducible, never x") {
    auto pts = enumerate_closed_points(5, 1, 2);
    std::set<std::pair<u32, u64>> keys;
    for (auto& pt : pts) {
        CHECK(!pt.res_field->is_zero(pt.min_poly[0]));
        keys.insert({pt.d, pt.coeff_code(1)});
    }
    CHECK(keys.size() == pts.size());
}

TEST_CASE("representative is a root; lift consistency") {
    auto pts = enumerate_closed_points(5, 1, 2);
    for (auto& pt : pts) {
        auto rd = residue_data(pt);
        CHECK(rd.field.m == pt.d);
        // lambda = teich(lambda_bar) satisfies lambda^{q^d} = lambda and
        // reduces to lambda_bar
        auto R = PadicRing::make(5, 1, pt.d, 4, rd.field.modulus);
        Padic lam = teichmueller_lift(R, rd.residue_poly);
        u64 qd = 1;
        for (u32 i = 0; i < pt.d; ++i) qd *= 5;
        CHECK(lam.pow_u64(qd) == lam);
        for (u32 i = 0; i < R->k(); ++i)
            CHECK(lam.at(0, i) % 5 == (i < pt.representative.size() ? pt.representative[i] : 0));
        // min_poly(lambda) = 0 mod p: evaluate min_poly at lambda_bar
        auto F = pt.res_field;
        FFElt acc = F->zero(), pw = F->one();
        for (auto& c : pt.min_poly) {
            // coefficients of min_poly live in F_q = F_p here (a = 1)
            acc = F->add(acc, F->mul(pw, c.size() == F->deg ? c : F->from_u32(c[0])));
            pw = F->mul(pw, pt.representative);
        }
        CHECK(F->is_zero(acc));
    }
}

TEST_CASE("rational point reps: 1 lifts to 1, 2 lifts to 7 mod 25") {
    auto pts = enumerate_closed_points(5, 1, 1);
    REQUIRE(pts.size() == 4);
    auto R = PadicRing::make(5, 1, 1, 2);
    // points ordered by constant coefficient: min_poly x + c, c = 1..4,
    // representative = -c
    for (auto& pt : pts) {
        auto rd = residue_data(pt);
        Padic lam = teichmueller_lift(R, rd.residue_poly);
        if (rd.lambda_bar == pt.res_field->from_u32(1)) CHECK(lam.at(0, 0) == 1);
        if (rd.lambda_bar == pt.res_field->from_u32(2)) CHECK(lam.at(0, 0) % 25 == 7);
    }
}

TEST_CASE("tables: log/exp/trace") {
    auto F = FField::make(5, 2);
    auto T = FFTables::build(F);
    CHECK(T.L == 24);
    for (u64 l = 0; l < T.L; ++l) {
        CHECK(T.log_of[T.exp_of[l]] == l);
        CHECK(T.trace_by_log[l] == F->trace_to_prime(F->decode(T.exp_of[l])));
    }
}

TEST_CASE("enumeration over F_25 (a=2 smoke)") {
    auto pts = enumerate_closed_points(5, 2, 1);
    CHECK(pts.size() == 24);  // q - 1 rational points of G_m
}

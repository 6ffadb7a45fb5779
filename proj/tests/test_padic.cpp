#include "doctest.h"

#include "thetak/padic.hpp"
#include "thetak/rng.hpp"

using namespace thetak;

TEST_CASE("context rejects p = 2 and composites") {
    CHECK_THROWS_AS(PadicContext(2, 4), error);
    CHECK_THROWS_AS(PadicContext(9, 2), error);
    CHECK_THROWS_AS(PadicContext(3, 0), error);
}

TEST_CASE("ring operations are exact mod p^N") {
    PadicContext ctx(3, 4);  // modulo 81
    PadicScalar a(ctx, 40), b(ctx, 41);
    CHECK((a + b).residue() == 0);
    CHECK((PadicScalar(ctx, 2) * b).residue() == 1);
    PadicContext ctx5(5, 3);
    CHECK((PadicScalar(ctx5, 0) * PadicScalar(ctx5, 87)).residue() == 0);
}

TEST_CASE("context mismatch is rejected") {
    PadicContext a(3, 4), b(5, 4);
    CHECK_THROWS_AS(PadicScalar(a, 1) + PadicScalar(b, 1), context_mismatch_error);
}

TEST_CASE("invert") {
    PadicContext ctx(3, 4);
    CHECK(PadicScalar(ctx, 2).invert().residue() == 41);
    CHECK(PadicScalar(ctx, 1).invert().residue() == 1);
    CHECK_THROWS_AS(PadicScalar(ctx, 3).invert(), non_unit_error);
}

TEST_CASE("valuation") {
    PadicContext ctx(3, 4);
    CHECK(PadicScalar(ctx, 18).valuation() == 2);
    CHECK(PadicScalar(ctx, 5).valuation() == 0);
    CHECK(PadicScalar(ctx, 0).valuation() == 4);  // saturated
}

TEST_CASE("exact division by p tracks precision") {
    PadicContext ctx5(5, 3);
    PadicScalar ten(ctx5, 10);
    PadicScalar q = ten.exact_div_p(1);
    CHECK(q.residue() == 2);
    CHECK(q.prec() == 2);
    PadicContext ctx3(3, 4);
    CHECK(PadicScalar(ctx3, 3).exact_div_p(1).residue() == 1);
    CHECK_THROWS_AS(PadicScalar(ctx3, 2).exact_div_p(1), insufficient_valuation_error);
}

TEST_CASE("exact_div_p undoes multiplication by p^k") {
    PadicContext ctx(3, 6);
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        int k = static_cast<int>(rng.below(3));  // k <= N/2
        PadicScalar a(ctx, rng.below(ctx.modulus()));
        PadicScalar scaled = a * PadicScalar(ctx, ctx.p_pow(k));
        CHECK(scaled.exact_div_p(k).equals_mod(a, 6 - k));
    }
}

TEST_CASE("topological generator is minimal and has full order") {
    CHECK(topological_generator(3) == 2);
    CHECK(topological_generator(5) == 2);
    CHECK(topological_generator(7) == 3);
    // Brute-force order check modulo p^N for N <= 6.
    for (int64_t p : {3, 5, 7}) {
        for (int N = 1; N <= 6; ++N) {
            PadicContext ctx(p, N);
            int64_t g = ctx.generator();
            int64_t phi = ctx.unit_group_order();
            int64_t cur = 1 % ctx.modulus();
            int64_t order = 0;
            do {
                cur = ctx.mul(cur, g);
                ++order;
            } while (cur != 1 % ctx.modulus());
            CHECK(order == phi);
        }
    }
}

TEST_CASE("ring axioms on random triples") {
    for (int64_t p : {3, 5}) {
        PadicContext ctx(p, 6);
        Rng rng(42 + p);
        for (int i = 0; i < 1000; ++i) {
            PadicScalar a(ctx, rng.below(ctx.modulus()));
            PadicScalar b(ctx, rng.below(ctx.modulus()));
            PadicScalar c(ctx, rng.below(ctx.modulus()));
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("invert is a two-sided inverse whenever it succeeds") {
    PadicContext ctx(7, 5);
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        PadicScalar a(ctx, rng.below(ctx.modulus()));
        if (a.valuation() > 0) continue;
        CHECK((a * a.invert()).residue() == 1);
        CHECK((a.invert() * a).residue() == 1);
    }
}

TEST_CASE("discrete log recovers exponents") {
    PadicContext ctx(5, 4);
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        int64_t e = rng.below(ctx.unit_group_order());
        int64_t k = ctx.pow_mod(ctx.generator(), e);
        CHECK(ctx.discrete_log(k) == e);
    }
    CHECK_THROWS_AS(ctx.discrete_log(5), non_unit_error);
}

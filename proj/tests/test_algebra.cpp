#include "doctest.h"

#include "thetak/algebra.hpp"
#include "thetak/rng.hpp"

using namespace thetak;

namespace {

PresPtr exterior_pres(const PadicContext& ctx, int n) {
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i) {
        Generator g;
        g.name = "y" + std::to_string(i + 1);
        g.degree = 1;
        gens.push_back(g);
    }
    return make_presentation(ctx, gens);
}

PresPtr trunc_pres(const PadicContext& ctx, int n) {
    Generator g;
    g.name = "x";
    g.degree = 0;
    g.kind = GenKind::TruncatedPoly;
    g.trunc = n;
    return make_presentation(ctx, {g});
}

}  // namespace

TEST_CASE("basis enumeration and rank") {
    PadicContext ctx(3, 4);
    CHECK(exterior_pres(ctx, 3)->rank() == 8);
    CHECK(trunc_pres(ctx, 5)->rank() == 5);
}

TEST_CASE("koszul sign: odd generators anticommute") {
    PadicContext ctx(3, 4);
    PresPtr pres = exterior_pres(ctx, 2);
    AlgebraElement a = AlgebraElement::gen(*pres, 0);
    AlgebraElement b = AlgebraElement::gen(*pres, 1);
    CHECK(b * a == -(a * b));
    CHECK((a * a).is_zero());
    // (x + y)^2 = xy + yx = 0.
    CHECK(((a + b) * (a + b)).is_zero());
}

TEST_CASE("truncation relation x * x^2 = 0 in Z_p[x]/(x^3)") {
    PadicContext ctx(3, 4);
    PresPtr pres = trunc_pres(ctx, 3);
    AlgebraElement x = AlgebraElement::gen(*pres, 0);
    AlgebraElement x2 = x * x;
    CHECK_FALSE(x2.is_zero());
    CHECK((x * x2).is_zero());
}

TEST_CASE("graded commutativity with signs on random homogeneous elements") {
    PadicContext ctx(5, 4);
    std::vector<Generator> gens;
    for (int i = 0; i < 3; ++i) {
        Generator g;
        g.name = "y" + std::to_string(i);
        g.degree = 2 * i + 1;  // odd internal degrees
        gens.push_back(g);
    }
    Generator even;
    even.name = "x";
    even.degree = 0;
    even.kind = GenKind::TruncatedPoly;
    even.trunc = 3;
    gens.push_back(even);
    PresPtr pres = make_presentation(ctx, gens);
    Rng rng(5150);
    for (int iter = 0; iter < 200; ++iter) {
        // Random homogeneous-parity elements.
        auto rand_elem = [&](int parity) {
            AlgebraElement e(*pres);
            for (int t = 0; t < 3; ++t) {
                const Monomial& m =
                    pres->basis()[static_cast<size_t>(rng.below(pres->rank()))];
                if (pres->monomial_parity(m) != parity) continue;
                e.add_term(m, PadicScalar(ctx, rng.below(ctx.modulus())));
            }
            return e;
        };
        int pa = static_cast<int>(rng.below(2)), pb = static_cast<int>(rng.below(2));
        AlgebraElement a = rand_elem(pa), b = rand_elem(pb);
        AlgebraElement ab = a * b, ba = b * a;
        if (pa == 1 && pb == 1)
            CHECK(ab == -ba);
        else
            CHECK(ab == ba);
        // Associativity against a third element.
        AlgebraElement c = rand_elem(static_cast<int>(rng.below(2)));
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("element vector round-trip") {
    PadicContext ctx(3, 4);
    PresPtr pres = exterior_pres(ctx, 3);
    Rng rng(9);
    for (int iter = 0; iter < 30; ++iter) {
        AlgebraElement e(*pres);
        for (int t = 0; t < 4; ++t)
            e.add_term(pres->basis()[static_cast<size_t>(rng.below(pres->rank()))],
                       PadicScalar(ctx, rng.below(ctx.modulus())));
        CHECK(AlgebraElement::from_vector(*pres, e.to_vector()) == e);
    }
}

TEST_CASE("monomial degrees and parity") {
    PadicContext ctx(3, 4);
    std::vector<Generator> gens;
    Generator a;
    a.name = "a";
    a.degree = -3;
    gens.push_back(a);
    Generator b;
    b.name = "b";
    b.degree = 1;
    gens.push_back(b);
    PresPtr pres = make_presentation(ctx, gens);
    Monomial ab{{0, 1}, {1, 1}};
    CHECK(pres->monomial_degree(ab) == -2);
    CHECK(pres->monomial_parity(ab) == 0);
    CHECK(pres->odd_factor_count(ab) == 2);
}

TEST_CASE("presentation rejects malformed generators") {
    PadicContext ctx(3, 4);
    Generator even_ext;
    even_ext.name = "bad";
    even_ext.degree = 0;  // exterior generators must be odd
    CHECK_THROWS_AS(make_presentation(ctx, {even_ext}), error);
    Generator odd_poly;
    odd_poly.name = "bad2";
    odd_poly.degree = 1;
    odd_poly.kind = GenKind::TruncatedPoly;
    odd_poly.trunc = 3;
    CHECK_THROWS_AS(make_presentation(ctx, {odd_poly}), error);
}

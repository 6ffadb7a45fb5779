#include "doctest.h"

#include "thetak/catalog.hpp"
#include "thetak/report.hpp"
#include "thetak/rng.hpp"

using namespace thetak;

TEST_CASE("sphere data") {
    PadicContext ctx(3, 6);
    SUBCASE("n = 0: theta is the identity, trivial cokernel") {
        MoravaModule g = sphere_data(0, ctx);
        CHECK(g.theta_G->block_or_zero(-1).at(0, 0) == 1);
        V1Report rep = v1_invariant(g);
        CHECK(rep.cokernel.is_trivial());
        CHECK(rep.kernel.is_trivial());
    }
    SUBCASE("n = 1 at p = 3: theta = 3") {
        MoravaModule g = sphere_data(1, ctx);
        CHECK(g.theta_G->block_or_zero(-3).at(0, 0) == 3);
    }
    SUBCASE("psi commutes with theta (scalar maps)") {
        for (int n = 0; n <= 4; ++n) CHECK(sphere_data(n, ctx).theta_commutes);
    }
    SUBCASE("the Adams weight is configurable") {
        MoravaModule g = sphere_data(2, ctx, 5);
        CHECK(g.psi_g.block_or_zero(-5).at(0, 0) == ctx.pow_mod(ctx.generator(), 5));
    }
}

TEST_CASE("su data") {
    SUBCASE("SU(3) at p = 3: theta matrix [[1,0],[1,3]]") {
        PadicContext ctx(3, 6);
        MoravaModule g = su_data(3, ctx);
        Mat t = g.theta_G->block_or_zero(-1);
        CHECK(t.at(0, 0) == 1);
        CHECK(t.at(0, 1) == 0);
        CHECK(t.at(1, 0) == 1);
        CHECK(t.at(1, 1) == 3);
    }
    SUBCASE("SU(2): theta(x) = x for any p") {
        for (int64_t p : {3, 5, 7}) {
            PadicContext ctx(p, 5);
            MoravaModule g = su_data(2, ctx);
            CHECK(g.theta_G->block_or_zero(-1).at(0, 0) == 1);
        }
    }
    SUBCASE("psi^2(x) = 2x + x^2 in the SU(3) data") {
        PadicContext ctx(3, 6);
        MoravaModule g = su_data(3, ctx);
        GradedLinearMap p2 = psi_for(g, 2);
        Mat b = p2.block_or_zero(-1);
        CHECK(b.at(0, 0) == 2);
        CHECK(b.at(1, 0) == 1);
    }
    SUBCASE("bott twist scales theta by p") {
        PadicContext ctx(5, 6);
        MoravaModule g0 = su_data(2, ctx, 0);
        MoravaModule g1 = su_data(2, ctx, 1);
        CHECK(g1.theta_G->block_or_zero(-1).at(0, 0) ==
              ctx.mul(5, g0.theta_G->block_or_zero(-1).at(0, 0)));
    }
}

TEST_CASE("sphere(0) and su(2) differ in theta and the difference is surfaced") {
    PadicContext ctx(3, 6);
    MoravaModule s = sphere_data(0, ctx);  // theta = 1 on S^1
    MoravaModule u = su_data(2, ctx);      // theta = 1 as well
    CHECK(s.rank() == 1);
    CHECK(u.rank() == 1);
    // SU(2) = S^3 = sphere(1): theta = p vs theta(x) = x; the catalog keeps
    // both verbatim and the reports carry the convention note.
    MoravaModule s3 = sphere_data(1, ctx);
    CHECK(s3.theta_G->block_or_zero(-3).at(0, 0) == 3);
    CHECK(u.theta_G->block_or_zero(-1).at(0, 0) == 1);
    V1Report rs = v1_invariant(s3), ru = v1_invariant(u);
    CHECK_FALSE(rs.cokernel == ru.cokernel);
    CHECK(!ru.notes.empty());
}

TEST_CASE("v1 invariants") {
    SUBCASE("spheres: coker = Z/p^n, kernel = 0") {
        for (int64_t p : {3, 5}) {
            PadicContext ctx(p, 6);
            for (int n = 0; n <= 5; ++n) {
                V1Report rep = v1_invariant(sphere_data(n, ctx));
                CHECK(rep.kernel.is_trivial());
                if (n == 0) {
                    CHECK(rep.cokernel.is_trivial());
                } else {
                    ModulePart part = rep.cokernel.part_or_zero(-2 * n - 1);
                    CHECK(part.free == 0);
                    CHECK(part.torsion == std::vector<int>{n});
                }
                CHECK(rep.injective);
            }
        }
    }
    SUBCASE("SU(3) at p = 3: coker = Z/3") {
        PadicContext ctx(3, 6);
        V1Report rep = v1_invariant(su_data(3, ctx));
        CHECK(rep.kernel.is_trivial());
        ModulePart part = rep.cokernel.part_or_zero(-1);
        CHECK(part.torsion == std::vector<int>{1});
        CHECK(part.free == 0);
    }
    SUBCASE("theta = identity gives trivial cokernel") {
        PadicContext ctx(3, 6);
        V1Report rep = v1_invariant(sphere_data(0, ctx));
        CHECK(rep.cokernel.is_trivial());
    }
}

TEST_CASE("v1 output is invariant under unimodular change of basis") {
    PadicContext ctx(3, 5);
    Rng rng(808);
    MoravaModule base = su_data(4, ctx);
    V1Report expect = v1_invariant(base);
    Mat theta = base.theta_G->block_or_zero(-1);
    Mat psi = base.psi_g.block_or_zero(-1);
    GradedModule mod = base.module;
    for (int iter = 0; iter < 100; ++iter) {
        Mat u = Mat::identity(ctx, 3);
        for (int k = 0; k < 5; ++k) {
            int i = static_cast<int>(rng.below(3)), j = static_cast<int>(rng.below(3));
            if (i == j) continue;
            int64_t c = rng.below(ctx.modulus());
            for (int r = 0; r < 3; ++r) u.at(r, i) = ctx.add(u.at(r, i), ctx.mul(c, u.at(r, j)));
        }
        Mat uinv = inverse(u);
        MoravaModule conj = MoravaModule::create(
            mod, GradedLinearMap::single_block(mod, mod, -1, -1, uinv * psi * u),
            GradedLinearMap::single_block(mod, mod, -1, -1, uinv * theta * u));
        V1Report rep = v1_invariant(conj);
        CHECK(rep.cokernel == expect.cokernel);
        CHECK(rep.kernel == expect.kernel);
        CHECK(rep.smith_exponents == expect.smith_exponents);
    }
}

TEST_CASE("custom input parsing") {
    SUBCASE("valid input round-trips") {
        nlohmann::json j = {
            {"p", 3},
            {"precision", 5},
            {"generators", {{{"name", "a"}, {"degree", -1}}, {{"name", "b"}, {"degree", -1}}}},
            {"theta", {{1, 0}, {1, 3}}},
            {"psi_g", {{2, 0}, {1, 4}}}};
        CustomSpace c = parse_custom(j);
        CHECK(c.p == 3);
        CHECK(c.names == std::vector<std::string>{"a", "b"});
        PadicContext ctx(3, 5);
        MoravaModule g = custom_data(c, ctx);
        CHECK(g.rank() == 2);
        V1Report rep = v1_invariant(g);
        CHECK(rep.cokernel.part_or_zero(-1).torsion == std::vector<int>{1});
    }
    SUBCASE("malformed input reports the field path") {
        nlohmann::json j = {{"p", 3}, {"precision", 5}};
        try {
            parse_custom(j);
            CHECK(false);
        } catch (const error& e) {
            CHECK(std::string(e.what()).find("generators") != std::string::npos);
        }
        nlohmann::json j2 = {
            {"p", 3},
            {"precision", 5},
            {"generators", {{{"name", "a"}, {"degree", 2}}}},  // even degree
            {"theta", {{1}}},
            {"psi_g", {{1}}}};
        try {
            parse_custom(j2);
            CHECK(false);
        } catch (const error& e) {
            CHECK(std::string(e.what()).find("generators[0].degree") != std::string::npos);
        }
    }
}

TEST_CASE("reports are deterministic given (spec, seed)") {
    SpaceSpec spec;
    spec.kind = SpaceSpec::Kind::Sphere;
    spec.n = 2;
    spec.p = 3;
    spec.precision = 6;
    spec.depth = 1;
    spec.samples = 30;
    spec.seed = 99;
    Report a = run_report(spec, {"axioms", "v1"});
    Report b = run_report(spec, {"axioms", "v1"});
    CHECK(a.body.dump() == b.body.dump());
    CHECK(a.exit_code == 0);
}

TEST_CASE("run_report exit codes") {
    SUBCASE("all-pass is zero") {
        SpaceSpec spec;
        spec.kind = SpaceSpec::Kind::SU;
        spec.n = 3;
        spec.p = 3;
        spec.depth = 1;
        spec.samples = 20;
        Report rep = run_report(spec, {"v1", "presentation"});
        CHECK(rep.exit_code == 0);
    }
    SUBCASE("input error is two") {
        SpaceSpec spec;
        spec.kind = SpaceSpec::Kind::Custom;
        spec.custom_path = "/nonexistent/file.json";
        Report rep = run_report(spec, {"v1"});
        CHECK(rep.exit_code == 2);
        CHECK(rep.body.contains("input_error"));
    }
    SUBCASE("planted fault yields one") {
        // SU(4) at p = 3 cannot form a theta-algebra (theta fails to commute
        // with psi), so the axiom task reports a certificate failure.
        SpaceSpec spec;
        spec.kind = SpaceSpec::Kind::SU;
        spec.n = 4;
        spec.p = 3;
        spec.samples = 10;
        Report rep = run_report(spec, {"axioms"});
        CHECK(rep.exit_code == 1);
    }
}

TEST_CASE("v1 report on a non-injective theta declines the interpretation") {
    PadicContext ctx(3, 6);
    GradedModule mod = GradedModule::free_module(ctx, -1, 1);
    MoravaModule g = MoravaModule::create(
        mod, GradedLinearMap::identity(mod),
        GradedLinearMap::single_block(mod, mod, -1, -1, Mat(ctx, 1, 1)));
    V1Report rep = v1_invariant(g);
    CHECK_FALSE(rep.injective);
    CHECK(rep.kernel == mod);
    CHECK(rep.cokernel == mod);
    bool has_decline = false;
    for (auto& n : rep.notes)
        if (n.find("does not apply") != std::string::npos) has_decline = true;
    CHECK(has_decline);
}

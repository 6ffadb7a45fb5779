#include "thetak/presentation.hpp"

#include <algorithm>

namespace thetak {

namespace {

// theta_G assembled as one gens x gens matrix (column convention), in the
// generator order used by free_theta_algebra / exterior_theta_algebra.
Mat assemble_theta_matrix(const MoravaModule& G) {
    const PadicContext& ctx = G.module.ctx();
    std::vector<int> degrees;
    for (auto& [d, part] : G.module.parts())
        for (int i = 0; i < part.free; ++i) degrees.push_back(d);
    int n = static_cast<int>(degrees.size());
    Mat m(ctx, n, n);
    int col = 0;
    for (auto& [d, part] : G.module.parts()) {
        Mat block = G.theta_G->block_or_zero(d);
        int row0 = 0;
        for (auto& [d2, part2] : G.module.parts()) {
            if (d2 == d) break;
            row0 += part2.free;
        }
        for (int j = 0; j < part.free; ++j)
            for (int i = 0; i < part.free; ++i) m.at(row0 + i, col + j) = block.at(i, j);
        col += part.free;
    }
    return m;
}

}  // namespace

RelationMapData relation_map(const MoravaModule& G, int depth, DepthMode mode) {
    if (!G.odd_free()) throw error("relation_map: G must be odd, finitely generated and free");
    if (!G.theta_G) throw error("relation_map: theta_G required");
    RelationMapData data;
    data.G = G;
    data.depth = depth;
    data.source = free_theta_algebra(G, depth, mode);
    data.target = free_theta_algebra(G, depth + 1, mode);
    data.lambda = assemble_theta_matrix(G);
    int n = data.lambda.rows();
    const PadicContext& ctx = G.module.ctx();
    auto tgt_gen = [n](int t, int i) { return t * n + i; };
    for (int t = 0; t <= depth; ++t)
        for (int i = 0; i < n; ++i) {
            // theta^{t+1} x_i - sum_j lambda_{ij} theta^t x_j.
            AlgebraElement img = AlgebraElement::gen(data.target.pres(), tgt_gen(t + 1, i));
            for (int j = 0; j < n; ++j) {
                int64_t lam = data.lambda.at(j, i);
                if (lam != 0)
                    img.add_term({{tgt_gen(t, j), 1}}, PadicScalar(ctx, ctx.neg(lam)));
            }
            data.images.push_back(img);
        }
    return data;
}

AlphaBasis alpha_basis(const MoravaModule& G, int depth) {
    RelationMapData data = relation_map(G, depth);
    const PadicContext& ctx = G.module.ctx();
    int n = data.lambda.rows();
    int old_count = (depth + 2) * n;
    AlphaBasis out;
    out.rank = n;
    out.depth = depth;
    out.alpha = data.images;

    // Rows: x_1..x_n, then alpha layer 0..T; columns: old generators
    // layer-major (layer 0 first). Lower unitriangular by construction.
    Mat trans(ctx, old_count, old_count);
    for (int i = 0; i < n; ++i) trans.at(i, i) = 1;
    for (int t = 0; t <= depth; ++t)
        for (int i = 0; i < n; ++i) {
            int row = (t + 1) * n + i;
            trans.at(row, (t + 1) * n + i) = 1;
            for (int j = 0; j < n; ++j)
                trans.at(row, t * n + j) = ctx.neg(data.lambda.at(j, i));
        }
    out.transition = trans;
    out.unitriangular = true;
    for (int i = 0; i < old_count && out.unitriangular; ++i) {
        if (trans.at(i, i) != 1) out.unitriangular = false;
        for (int j = i + 1; j < old_count; ++j)
            if (trans.at(i, j) != 0) out.unitriangular = false;
    }
    out.back_substitution = inverse(trans);
    out.recovery_ok = (trans * out.back_substitution == Mat::identity(ctx, old_count)) &&
                      (out.back_substitution * trans == Mat::identity(ctx, old_count));

    // Pairwise anticommutation of the alphas (and with the x's): sampled.
    out.anticommute_ok = true;
    std::vector<AlgebraElement> fam;
    for (int i = 0; i < n; ++i) fam.push_back(AlgebraElement::gen(data.target.pres(), i));
    for (auto& a : out.alpha) fam.push_back(a);
    for (size_t i = 0; i < fam.size() && out.anticommute_ok; ++i)
        for (size_t j = i; j < fam.size(); ++j) {
            AlgebraElement s = fam[i] * fam[j] + fam[j] * fam[i];
            if (!s.is_zero()) out.anticommute_ok = false;
        }
    return out;
}

QuotientMap::QuotientMap(const RelationMapData& data, const ThetaAlgebra& lambda_g)
    : lambda_pres_(lambda_g.pres().shared_from_this()), rank_(data.lambda.rows()) {
    const PadicContext& ctx = data.G.module.ctx();
    int n = rank_;
    int T = data.depth;
    // New presentation: x_1..x_n, then alpha_{it} (t = 0..T), all odd.
    std::vector<int> degrees;
    for (auto& [d, part] : data.G.module.parts())
        for (int i = 0; i < part.free; ++i) degrees.push_back(d);
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i) {
        Generator g;
        g.name = data.target.pres().gens()[static_cast<size_t>(i)].name;
        g.degree = degrees[static_cast<size_t>(i)];
        gens.push_back(g);
    }
    for (int t = 0; t <= T; ++t)
        for (int i = 0; i < n; ++i) {
            Generator g;
            g.name = "a" + std::to_string(t) + "." + std::to_string(i + 1);
            g.degree = degrees[static_cast<size_t>(i)];
            gens.push_back(g);
        }
    newpres_ = make_presentation(ctx, gens);

    // Old target generators expressed over (x's, alphas):
    // theta^{t+1} x_i = alpha_{it} + sum_j lambda_{ij} theta^t x_j.
    expr_.resize(static_cast<size_t>(T) + 2);
    expr_[0].reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) expr_[0].push_back(AlgebraElement::gen(*newpres_, i));
    for (int t = 0; t <= T; ++t) {
        expr_[static_cast<size_t>(t) + 1].reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            AlgebraElement e = AlgebraElement::gen(*newpres_, n + t * n + i);
            for (int j = 0; j < n; ++j) {
                int64_t lam = data.lambda.at(j, i);
                if (lam != 0)
                    e = e + expr_[static_cast<size_t>(t)][static_cast<size_t>(j)].scale(lam);
            }
            expr_[static_cast<size_t>(t) + 1].push_back(e);
        }
    }
}

AlgebraElement QuotientMap::rewrite(const AlgebraElement& e) const {
    AlgebraElement out(*newpres_);
    for (auto& [m, c] : e.terms()) {
        AlgebraElement prod = AlgebraElement::scalar(*newpres_, c);
        for (auto& [g, exp] : m) {
            int t = g / rank_, i = g % rank_;
            for (int k = 0; k < exp; ++k)
                prod = prod * expr_[static_cast<size_t>(t)][static_cast<size_t>(i)];
        }
        out = out + prod;
    }
    return out;
}

AlgebraElement QuotientMap::apply(const AlgebraElement& e) const {
    AlgebraElement rewritten = rewrite(e);
    // Delete monomials containing any alpha; x-monomials translate directly.
    AlgebraElement out(*lambda_pres_);
    for (auto& [m, c] : rewritten.terms()) {
        bool has_alpha = false;
        for (auto& [g, exp] : m)
            if (g >= rank_) has_alpha = true;
        if (!has_alpha) out.add_term(m, c);
    }
    return out;
}

QuotientCertificate quotient_by_relations(const RelationMapData& data, int degree_budget) {
    const PadicContext& ctx = data.G.module.ctx();
    int n = data.lambda.rows();
    QuotientCertificate cert;

    // Reference exterior theta-algebra and the projection onto it.
    ThetaAlgebra lambda_g = exterior_theta_algebra(data.G);
    QuotientMap qmap(data, lambda_g);
    const AlgebraPresentation& newpres = qmap.alpha_presentation();

    // Rank and module comparison: alpha-free monomials of the new basis.
    int free_count = 0;
    GradedModule qmod(ctx);
    for (auto& m : newpres.basis()) {
        bool has_alpha = false;
        for (auto& [g, exp] : m)
            if (g >= n) has_alpha = true;
        if (has_alpha) continue;
        ++free_count;
        int d = newpres.monomial_degree(m);
        ModulePart part = qmod.part_or_zero(d);
        part.free += 1;
        qmod.set_part(d, part);
    }
    cert.quotient_rank = free_count;
    cert.quotient_module = qmod;
    cert.rank_match = free_count == (1 << n);
    GradedModule expect(ctx);
    for (auto& m : lambda_g.pres().basis()) {
        int d = lambda_g.pres().monomial_degree(m);
        ModulePart part = expect.part_or_zero(d);
        part.free += 1;
        expect.set_part(d, part);
    }
    cert.module_match = qmod == expect;

    // theta and psi descend and match Lambda[G] on all monomials within the
    // word-length budget.
    if (degree_budget < 0) degree_budget = n;
    cert.theta_match = true;
    cert.psi_match = true;
    for (auto& m : lambda_g.pres().basis()) {
        int len = 0;
        for (auto& [g, e] : m) len += e;
        if (len > degree_budget) continue;
        AlgebraElement lift = AlgebraElement::monomial(data.target.pres(), m, PadicScalar(ctx, 1));
        AlgebraElement lam_m = AlgebraElement::monomial(lambda_g.pres(), m, PadicScalar(ctx, 1));
        AlgebraElement qtheta = qmap.apply(data.target.theta(lift));
        AlgebraElement ltheta = lambda_g.theta(lam_m);
        if (!(qtheta == ltheta) && cert.theta_match) {
            cert.theta_match = false;
            cert.witness = "theta mismatch at monomial " + lambda_g.pres().monomial_str(m) +
                           " (degree " + std::to_string(lambda_g.pres().monomial_degree(m)) + ")";
        }
        AlgebraElement qpsi = qmap.apply(data.target.psi_g(lift));
        AlgebraElement lpsi = lambda_g.psi_g(lam_m);
        if (!(qpsi == lpsi) && cert.psi_match) {
            cert.psi_match = false;
            cert.witness = "psi mismatch at monomial " + lambda_g.pres().monomial_str(m) +
                           " (degree " + std::to_string(lambda_g.pres().monomial_degree(m)) + ")";
        }
    }
    cert.pass = cert.rank_match && cert.module_match && cert.theta_match && cert.psi_match;
    if (!cert.pass && cert.witness.empty()) cert.witness = "rank or module mismatch";
    return cert;
}

ZeroCertificate composite_is_zero(const MoravaModule& G, int depth) {
    RelationMapData data = relation_map(G, depth);
    ZeroCertificate cert;
    cert.pass = true;
    // Universal map Free_theta[G]_{T+1} -> Lambda[G] via the linear theta_G
    // action on generators. The Adams action plays no role in the composite,
    // so the evaluation algebra takes psi = id (which always commutes).
    int n = data.lambda.rows();
    MoravaModule eval_g = MoravaModule::create(G.module, GradedLinearMap::identity(G.module),
                                               G.theta_G, G.generator_names);
    ThetaAlgebra lambda_g = exterior_theta_algebra(eval_g);
    std::vector<AlgebraElement> base;
    for (int i = 0; i < n; ++i) base.push_back(AlgebraElement::gen(lambda_g.pres(), i));
    ThetaAlgebraMap u = universal_map(data.target, base, lambda_g);
    for (size_t k = 0; k < data.images.size(); ++k) {
        AlgebraElement img = u.apply(data.images[k]);
        if (!img.is_zero()) {
            cert.pass = false;
            cert.witness = "generator " +
                           data.source.pres().gens()[k].name +
                           " maps to " + img.str();
            return cert;
        }
    }
    return cert;
}

}  // namespace thetak

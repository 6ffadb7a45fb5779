#include "thetak/catalog.hpp"

#include <algorithm>

namespace thetak {

MoravaModule sphere_data(int n, const PadicContext& ctx, int psi_weight) {
    if (n < 0) throw error("sphere_data: n >= 0 required");
    if (psi_weight < 0) psi_weight = n + 1;
    int degree = -2 * n - 1;
    GradedModule g = GradedModule::free_module(ctx, degree, 1);
    Mat theta(ctx, 1, 1), psi(ctx, 1, 1);
    theta.at(0, 0) = n < ctx.precision() ? ctx.p_pow(n) : 0;
    psi.at(0, 0) = ctx.pow_mod(ctx.generator(), psi_weight);
    MoravaModule m = MoravaModule::create(
        g, GradedLinearMap::single_block(g, g, degree, degree, psi),
        GradedLinearMap::single_block(g, g, degree, degree, theta), {"x"});
    if (n >= ctx.precision())
        m.notes.push_back("theta_G = p^" + std::to_string(n) +
                          " is zero at precision " + std::to_string(ctx.precision()));
    return m;
}

MoravaModule su_data(int n, const PadicContext& ctx, int bott_twist) {
    if (n < 2) throw error("su_data: n >= 2 required");
    ThetaAlgebra ring = truncated_poly_theta_ring(ctx, n);
    int rank = n - 1;
    int degree = -1;
    Mat theta(ctx, rank, rank), psi(ctx, rank, rank);
    for (int j = 1; j <= rank; ++j) {
        AlgebraElement xj = AlgebraElement::monomial(ring.pres(), {{0, j}}, PadicScalar(ctx, 1));
        AlgebraElement tx = ring.theta(xj);
        AlgebraElement px = ring.psi_int(ctx.generator(), xj);
        for (int i = 1; i <= rank; ++i) {
            theta.at(i - 1, j - 1) = tx.coeff({{0, i}}).residue();
            psi.at(i - 1, j - 1) = px.coeff({{0, i}}).residue();
        }
    }
    if (bott_twist > 0) theta = theta.scaled(ctx.p_pow(std::min(bott_twist, ctx.precision())));
    GradedModule g = GradedModule::free_module(ctx, degree, rank);
    std::vector<std::string> names;
    for (int i = 1; i <= rank; ++i)
        names.push_back(i == 1 ? "x" : "x^" + std::to_string(i));
    MoravaModule m = MoravaModule::create(
        g, GradedLinearMap::single_block(g, g, degree, degree, psi),
        GradedLinearMap::single_block(g, g, degree, degree, theta), names);
    m.notes.push_back("theta derived inside Z_p[x]/(x^" + std::to_string(n) +
                      ") from the displayed formula on x via the product law");
    if (bott_twist > 0)
        m.notes.push_back("Bott twist applied: theta scaled by p^" + std::to_string(bott_twist));
    return m;
}

CustomSpace parse_custom(const nlohmann::json& j) {
    CustomSpace c;
    auto require = [&](bool ok, const std::string& path, const std::string& what) {
        if (!ok) throw error("custom input: " + path + ": " + what);
    };
    require(j.is_object(), "$", "expected a JSON object");
    require(j.contains("p") && j["p"].is_number_integer(), "p", "odd prime required");
    require(j.contains("precision") && j["precision"].is_number_integer(), "precision",
            "integer >= 1 required");
    c.p = j["p"].get<int64_t>();
    c.precision = j["precision"].get<int>();
    require(c.p % 2 == 1 && c.p > 2, "p", "odd prime required");
    require(c.precision >= 1, "precision", "integer >= 1 required");
    require(j.contains("generators") && j["generators"].is_array() && !j["generators"].empty(),
            "generators", "nonempty array required");
    int idx = 0;
    for (auto& g : j["generators"]) {
        std::string path = "generators[" + std::to_string(idx) + "]";
        require(g.is_object() && g.contains("name") && g["name"].is_string(), path + ".name",
                "string required");
        require(g.contains("degree") && g["degree"].is_number_integer(), path + ".degree",
                "integer required");
        int deg = g["degree"].get<int>();
        require(((deg % 2) + 2) % 2 == 1, path + ".degree", "odd internal degree required");
        c.names.push_back(g["name"].get<std::string>());
        c.degrees.push_back(deg);
        ++idx;
    }
    int n = static_cast<int>(c.names.size());
    auto read_matrix = [&](const char* key, std::vector<std::vector<int64_t>>& out) {
        require(j.contains(key) && j[key].is_array() &&
                    static_cast<int>(j[key].size()) == n,
                key, "expected " + std::to_string(n) + " rows");
        int r = 0;
        for (auto& row : j[key]) {
            std::string path = std::string(key) + "[" + std::to_string(r) + "]";
            require(row.is_array() && static_cast<int>(row.size()) == n, path,
                    "expected " + std::to_string(n) + " integer entries");
            std::vector<int64_t> vals;
            int cidx = 0;
            for (auto& v : row) {
                require(v.is_number_integer(), path + "[" + std::to_string(cidx) + "]",
                        "integer required");
                vals.push_back(v.get<int64_t>());
                ++cidx;
            }
            out.push_back(vals);
            ++r;
        }
    };
    read_matrix("theta", c.theta);
    read_matrix("psi_g", c.psi_g);
    return c;
}

MoravaModule custom_data(const CustomSpace& c, const PadicContext& ctx) {
    // Generators grouped by degree; matrices refer to the file order, which
    // must already be degree-grouped for the block structure to make sense.
    std::map<int, int> ranks;
    for (int d : c.degrees) ++ranks[d];
    GradedModule g(ctx);
    for (auto& [d, r] : ranks) g.set_part(d, ModulePart{r, {}});
    int n = static_cast<int>(c.degrees.size());
    // Reject cross-degree entries: psi and theta preserve internal degree.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (c.degrees[static_cast<size_t>(i)] != c.degrees[static_cast<size_t>(j)] &&
                (c.theta[static_cast<size_t>(i)][static_cast<size_t>(j)] % ctx.modulus() != 0 ||
                 c.psi_g[static_cast<size_t>(i)][static_cast<size_t>(j)] % ctx.modulus() != 0))
                throw error("custom input: theta/psi_g must preserve internal degree");
    std::map<int, Mat> theta_blocks, psi_blocks;
    for (auto& [d, r] : ranks) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (c.degrees[static_cast<size_t>(i)] == d) idx.push_back(i);
        Mat tb(ctx, r, r), pb(ctx, r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                tb.at(i, j) = ctx.reduce(c.theta[static_cast<size_t>(idx[static_cast<size_t>(i)])]
                                                [static_cast<size_t>(idx[static_cast<size_t>(j)])]);
                pb.at(i, j) = ctx.reduce(c.psi_g[static_cast<size_t>(idx[static_cast<size_t>(i)])]
                                                [static_cast<size_t>(idx[static_cast<size_t>(j)])]);
            }
        theta_blocks.emplace(d, tb);
        psi_blocks.emplace(d, pb);
    }
    return MoravaModule::create(g, GradedLinearMap(g, g, 0, psi_blocks),
                                GradedLinearMap(g, g, 0, theta_blocks), c.names);
}

V1Report v1_invariant(const MoravaModule& G) {
    if (!G.theta_G) throw error("v1_invariant: theta_G required");
    V1Report rep;
    rep.theta_commutes = G.theta_commutes;
    KernelResult ker = kernel(*G.theta_G);
    rep.kernel = ker.module;
    rep.precision_loss = ker.precision_loss;
    rep.cokernel = cokernel(*G.theta_G);
    for (auto& [d, part] : G.module.parts()) {
        Mat block = G.theta_G->block_or_zero(d);
        SmithForm s = smith_normal_form(block);
        for (int e : s.exponents) rep.smith_exponents.push_back(e);
    }
    std::sort(rep.smith_exponents.begin(), rep.smith_exponents.end());
    rep.injective = rep.kernel.is_trivial();
    for (auto& note : G.notes) rep.notes.push_back(note);
    if (rep.injective)
        rep.notes.push_back("advisory: theta_G is injective at this precision, so the "
                            "algebraic shadow of the v1-periodic object is the cokernel "
                            "(the spectrum-level statement is out of scope)");
    else
        rep.notes.push_back("advisory: theta_G has a kernel at this precision; the "
                            "injectivity simplification does not apply, and kernel and "
                            "cokernel are reported without homotopy interpretation");
    if (rep.precision_loss)
        rep.notes.push_back("precision: pivot valuations at the precision ceiling; "
                            "kernel may be inexact");
    return rep;
}

nlohmann::ordered_json V1Report::to_json() const {
    nlohmann::ordered_json j;
    j["kernel"] = kernel.to_json();
    j["cokernel"] = cokernel.to_json();
    j["smith_exponents"] = smith_exponents;
    j["injective"] = injective;
    j["theta_commutes_with_psi"] = theta_commutes;
    j["precision_loss"] = precision_loss;
    j["notes"] = notes;
    return j;
}

}  // namespace thetak

#include "thetak/report.hpp"

#include <algorithm>
#include <fstream>

namespace thetak {

namespace {

struct CertCollector {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& witness = "") {
        nlohmann::ordered_json c;
        c["name"] = name;
        c["pass"] = pass;
        if (!witness.empty()) c["witness"] = witness;
        list.push_back(c);
        all_pass = all_pass && pass;
    }

    void add_skipped(const std::string& name, const std::string& reason) {
        nlohmann::ordered_json c;
        c["name"] = name;
        c["skipped"] = reason;
        list.push_back(c);
    }
};

void run_axioms(const SpaceSpec& spec, const MoravaModule& g, nlohmann::ordered_json& out,
                CertCollector& certs) {
    nlohmann::ordered_json j;
    try {
        ThetaAlgebra lam = exterior_theta_algebra(g);
        AxiomReport rep = check_theta_axioms(lam, spec.samples, spec.seed);
        j["samples"] = rep.samples;
        j["compare_precision"] = rep.compare_precision;
        nlohmann::ordered_json per;
        for (auto& [axiom, ok] : rep.per_axiom) per[axiom] = ok;
        j["per_axiom"] = per;
        if (!rep.failures.empty()) {
            nlohmann::ordered_json w = nlohmann::ordered_json::array();
            for (auto& f : rep.failures) w.push_back({{"axiom", f.axiom}, {"detail", f.detail}});
            j["witnesses"] = w;
        }
        certs.add("theta-axioms", rep.pass,
                  rep.pass ? "" : rep.failures.front().axiom + ": " + rep.failures.front().detail);
    } catch (const error& e) {
        j["error"] = e.what();
        certs.add("theta-axioms", false, e.what());
    }
    out["axioms"] = j;
}

void run_presentation(const SpaceSpec& spec, const MoravaModule& g, nlohmann::ordered_json& out,
                      CertCollector& certs) {
    nlohmann::ordered_json j;
    try {
        AlphaBasis ab = alpha_basis(g, spec.depth);
        j["transition"] = ab.transition.to_rows();
        certs.add("alpha-basis-unitriangular", ab.unitriangular);
        certs.add("alpha-basis-anticommute", ab.anticommute_ok);
        certs.add("alpha-basis-recovery", ab.recovery_ok);
        RelationMapData data = relation_map(g, spec.depth);
        QuotientCertificate qc = quotient_by_relations(data, spec.max_degree);
        j["quotient_rank"] = qc.quotient_rank;
        j["quotient_module"] = qc.quotient_module.to_json();
        certs.add("quotient-is-exterior-algebra", qc.pass, qc.witness);
        ZeroCertificate zc = composite_is_zero(g, spec.depth);
        certs.add("null-composite", zc.pass, zc.witness);
    } catch (const error& e) {
        j["error"] = e.what();
        certs.add("presentation", false, e.what());
    }
    out["presentation"] = j;
}

// Largest truncation depth keeping rank(G) * (T + 2) target generators within
// the desk-scale cap.
int clamp_depth(const MoravaModule& g, int requested, int max_target_gens) {
    int rank = std::max(1, g.rank());
    int t = requested;
    while (t > 0 && rank * (t + 2) > max_target_gens) --t;
    return t;
}

// The Tor instance of the truncated flatness corollary: the target free
// theta-algebra as a module over the source via the relation map, against
// the augmentation.
void run_tor(const SpaceSpec& spec, const MoravaModule& g, nlohmann::ordered_json& out,
             CertCollector& certs) {
    nlohmann::ordered_json j;
    try {
        int depth = clamp_depth(g, spec.depth, 6);
        if (depth != spec.depth) j["depth_used"] = depth;
        RelationMapData data = relation_map(g, depth, DepthMode::TruncateToZero);
        AlgebraModule m = AlgebraModule::via_map(data.source, data.target, data.images, "B");
        AlgebraModule n = AlgebraModule::augmentation(data.source);
        std::vector<GradedModule> groups = tor(data.source, m, n, 2);
        j["tor0"] = groups[0].to_json();
        j["tor1"] = groups[1].to_json();
        j["tor2"] = groups[2].to_json();
        j["truncation_mode"] = "truncate-to-zero";
        j["stable_word_length"] = depth;
        // Stable internal degrees: realized by words of length <= T.
        auto stable_trivial = [&](const GradedModule& gm) {
            for (auto& [d, part] : gm.parts()) {
                if (part.is_trivial()) continue;
                bool stable = false;
                for (auto& mb : data.target.pres().basis()) {
                    int len = 0;
                    for (auto& [gg, e] : mb) len += e;
                    if (len <= depth && data.target.pres().monomial_degree(mb) == d)
                        stable = true;
                }
                if (stable) return false;
            }
            return true;
        };
        certs.add("tor-vanishing-stable-range", stable_trivial(groups[1]) && stable_trivial(groups[2]));
    } catch (const error& e) {
        j["error"] = e.what();
        certs.add("tor-vanishing-stable-range", false, e.what());
    }
    out["tor"] = j;
}

void run_ss(const SpaceSpec& spec, const MoravaModule& g, nlohmann::ordered_json& out,
            CertCollector& certs) {
    nlohmann::ordered_json j;
    if (g.rank() > 2) {
        j["skipped"] = "bar levels for rank > 2 exceed the desk-scale size guard";
        certs.add_skipped("ss", j["skipped"]);
        out["ss"] = j;
        return;
    }
    try {
        int depth = clamp_depth(g, std::min(spec.depth, 1), 4);
        if (depth != spec.depth) j["depth_used"] = depth;
        RelationMapData data = relation_map(g, depth, DepthMode::TruncateToZero);
        AlgebraModule m = AlgebraModule::via_map(data.source, data.target, data.images, "B");
        AlgebraModule n = AlgebraModule::augmentation(data.source);
        int s_max = 3;
        TorSSResult res = tor_ss(data.source, m, n, s_max);
        j["page2"] = res.pages.page_json(2);
        j["window"] = res.window;
        j["verdict"] = res.convergence.verdict == Verdict::CONVERGED ? "CONVERGED" : "INCONCLUSIVE";
        certs.add("ss-e1-is-normalized-bar", res.e1_is_normalized_bar, res.witness);
        certs.add("ss-e2-is-tor", res.e2_is_tor, res.witness);
        certs.add("ss-page-coherence", res.pages.page_coherence_ok, res.pages.coherence_witness);
        certs.add("ss-collapse", res.collapse);
        // Concentration on the zeroth column in the trusted range.
        bool col0 = true;
        for (auto& [key, part] : res.pages.canon)
            if (key.r == 2 && key.s > 0 && key.s + 1 <= s_max && !part.is_trivial()) col0 = false;
        certs.add("ss-concentrated-column-zero", col0);
    } catch (const error& e) {
        j["error"] = e.what();
        certs.add("ss", false, e.what());
    }
    out["ss"] = j;
}

void run_v1(const SpaceSpec& spec, const MoravaModule& g, nlohmann::ordered_json& out,
            CertCollector& certs) {
    (void)spec;
    nlohmann::ordered_json j;
    try {
        V1Report rep = v1_invariant(g);
        j = rep.to_json();
        certs.add("v1-computed", true);
    } catch (const error& e) {
        j["error"] = e.what();
        certs.add("v1-computed", false, e.what());
    }
    out["v1"] = j;
}

}  // namespace

MoravaModule space_module(const SpaceSpec& spec, const PadicContext& ctx) {
    switch (spec.kind) {
        case SpaceSpec::Kind::Sphere:
            return sphere_data(spec.n, ctx);
        case SpaceSpec::Kind::SU:
            return su_data(spec.n, ctx, spec.bott_twist);
        case SpaceSpec::Kind::Custom: {
            std::ifstream in(spec.custom_path);
            if (!in) throw error("cannot open custom file: " + spec.custom_path);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw error(std::string("custom input: invalid JSON: ") + e.what());
            }
            CustomSpace c = parse_custom(j);
            if (c.p != ctx.p() || c.precision != ctx.precision())
                throw error("custom input: context mismatch with requested p/precision");
            return custom_data(c, ctx);
        }
    }
    throw error("space_module: unreachable");
}

Report run_report(const SpaceSpec& spec, const std::vector<std::string>& tasks) {
    Report rep;
    nlohmann::ordered_json& j = rep.body;
    j["schema"] = "theta-kernel/1";
    try {
        PadicContext ctx(spec.p, spec.precision);
        nlohmann::ordered_json sj;
        sj["kind"] = spec.kind == SpaceSpec::Kind::Sphere ? "sphere"
                     : spec.kind == SpaceSpec::Kind::SU   ? "su"
                                                          : "custom";
        if (spec.kind != SpaceSpec::Kind::Custom) sj["n"] = spec.n;
        if (spec.kind == SpaceSpec::Kind::Custom) sj["path"] = spec.custom_path;
        sj["p"] = spec.p;
        sj["precision"] = spec.precision;
        sj["generator"] = ctx.generator();
        sj["depth"] = spec.depth;
        sj["seed"] = spec.seed;
        if (spec.bott_twist != 0) sj["bott_twist"] = spec.bott_twist;
        j["space"] = sj;

        MoravaModule g = space_module(spec, ctx);
        j["module"] = g.module.to_json();
        j["theta_commutes_with_psi"] = g.theta_commutes;
        if (!g.notes.empty()) j["notes"] = g.notes;

        CertCollector certs;
        nlohmann::ordered_json results;
        for (auto& t : tasks) {
            if (t == "axioms")
                run_axioms(spec, g, results, certs);
            else if (t == "presentation")
                run_presentation(spec, g, results, certs);
            else if (t == "tor")
                run_tor(spec, g, results, certs);
            else if (t == "ss")
                run_ss(spec, g, results, certs);
            else if (t == "v1")
                run_v1(spec, g, results, certs);
            else
                throw error("unknown task: " + t);
        }
        j["tasks"] = results;
        j["certificates"] = certs.list;
        j["all_pass"] = certs.all_pass;
        rep.exit_code = certs.all_pass ? 0 : 1;
    } catch (const error& e) {
        j["input_error"] = e.what();
        rep.exit_code = 2;
    }
    return rep;
}

std::string Report::to_text() const {
    std::string out;
    out += "theta-kernel report\n";
    if (body.contains("input_error")) {
        out += "input error: " + body["input_error"].get<std::string>() + "\n";
        return out;
    }
    auto& sj = body["space"];
    out += "space: " + sj["kind"].get<std::string>();
    if (sj.contains("n")) out += "(" + std::to_string(sj["n"].get<int>()) + ")";
    out += "  p=" + std::to_string(sj["p"].get<int64_t>());
    out += "  N=" + std::to_string(sj["precision"].get<int>());
    out += "  g=" + std::to_string(sj["generator"].get<int64_t>());
    out += "\n";
    if (body.contains("tasks") && body["tasks"].contains("v1")) {
        auto& v1 = body["tasks"]["v1"];
        if (v1.contains("smith_exponents")) {
            out += "v1 smith exponents:";
            for (auto& e : v1["smith_exponents"]) out += " " + std::to_string(e.get<int>());
            out += "\n";
        }
    }
    if (body.contains("certificates"))
        for (auto& c : body["certificates"]) {
            if (c.contains("skipped")) {
                out += "[skip] " + c["name"].get<std::string>() + "  (" +
                       c["skipped"].get<std::string>() + ")\n";
                continue;
            }
            out += c["pass"].get<bool>() ? "[pass] " : "[FAIL] ";
            out += c["name"].get<std::string>();
            if (c.contains("witness")) out += "  (" + c["witness"].get<std::string>() + ")";
            out += "\n";
        }
    if (body.contains("all_pass"))
        out += body["all_pass"].get<bool>() ? "all certificates pass\n" : "FAILURES present\n";
    return out;
}

}  // namespace thetak

#include "thetak/fixtures.hpp"

namespace thetak {

namespace {

nlohmann::ordered_json labels_json(const std::vector<BasisLabel>& labels) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (auto& b : labels) {
        nlohmann::ordered_json l;
        l["name"] = b.name;
        l["degree"] = b.degree;
        l["filtration"] = b.filtration;
        out.push_back(l);
    }
    return out;
}

std::vector<BasisLabel> labels_from(const nlohmann::json& j) {
    std::vector<BasisLabel> out;
    for (auto& l : j) {
        BasisLabel b;
        b.name = l.value("name", "");
        b.degree = l.value("degree", 0);
        b.filtration = l.value("filtration", 0);
        out.push_back(b);
    }
    return out;
}

Mat mat_from(const PadicContext& ctx, const nlohmann::json& j, int rows, int cols) {
    if (static_cast<int>(j.size()) != rows) throw error("fixture: matrix row count mismatch");
    Mat m(ctx, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[static_cast<size_t>(i)].size()) != cols)
            throw error("fixture: matrix column count mismatch");
        for (int c = 0; c < cols; ++c)
            m.set(i, c, j[static_cast<size_t>(i)][static_cast<size_t>(c)].get<int64_t>());
    }
    return m;
}

}  // namespace

nlohmann::ordered_json to_json(const ChainComplex& c) {
    nlohmann::ordered_json j;
    j["p"] = c.ctx().p();
    j["precision"] = c.ctx().precision();
    j["lo"] = c.lo();
    j["hi"] = c.hi();
    nlohmann::ordered_json degrees = nlohmann::ordered_json::array();
    for (int n = c.lo(); n <= c.hi(); ++n) {
        nlohmann::ordered_json d;
        d["basis"] = labels_json(c.basis(n));
        d["d"] = c.d(n).to_rows();
        degrees.push_back(d);
    }
    j["degrees"] = degrees;
    return j;
}

ChainComplex chain_complex_from_json(const PadicContext& ctx, const nlohmann::json& j) {
    int lo = j.at("lo").get<int>();
    int hi = j.at("hi").get<int>();
    std::vector<std::vector<BasisLabel>> basis;
    std::vector<Mat> diffs;
    auto& degrees = j.at("degrees");
    if (static_cast<int>(degrees.size()) != hi - lo + 1)
        throw error("fixture: degree count mismatch");
    for (int n = lo; n <= hi; ++n)
        basis.push_back(labels_from(degrees[static_cast<size_t>(n - lo)].at("basis")));
    for (int n = lo; n <= hi; ++n) {
        int rows = n - 1 >= lo ? static_cast<int>(basis[static_cast<size_t>(n - 1 - lo)].size()) : 0;
        int cols = static_cast<int>(basis[static_cast<size_t>(n - lo)].size());
        diffs.push_back(mat_from(ctx, degrees[static_cast<size_t>(n - lo)].at("d"), rows, cols));
    }
    return ChainComplex(ctx, lo, hi, basis, diffs);
}

nlohmann::ordered_json to_json(const FilteredComplex& f) {
    nlohmann::ordered_json j = to_json(f.complex);
    if (f.truncated_at) j["truncated_at"] = *f.truncated_at;
    return j;
}

FilteredComplex filtered_complex_from_json(const PadicContext& ctx, const nlohmann::json& j) {
    FilteredComplex f{chain_complex_from_json(ctx, j), std::nullopt};
    if (j.contains("truncated_at") && !j["truncated_at"].is_null())
        f.truncated_at = j["truncated_at"].get<int>();
    f.validate();
    return f;
}

nlohmann::ordered_json to_json(const SimplicialModule& q) {
    nlohmann::ordered_json j;
    j["p"] = q.ctx().p();
    j["precision"] = q.ctx().precision();
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (int s = 0; s <= q.top(); ++s) {
        nlohmann::ordered_json l;
        l["basis"] = labels_json(q.level(s));
        if (s >= 1) {
            nlohmann::ordered_json faces = nlohmann::ordered_json::array();
            for (int i = 0; i <= s; ++i) faces.push_back(q.face(s, i).to_rows());
            l["faces"] = faces;
        }
        if (s < q.top()) {
            nlohmann::ordered_json degens = nlohmann::ordered_json::array();
            for (int i = 0; i <= s; ++i) degens.push_back(q.degen(s, i).to_rows());
            l["degeneracies"] = degens;
        }
        levels.push_back(l);
    }
    j["levels"] = levels;
    return j;
}

SimplicialModule simplicial_from_json(const PadicContext& ctx, const nlohmann::json& j) {
    auto& levels_j = j.at("levels");
    int top = static_cast<int>(levels_j.size()) - 1;
    std::vector<std::vector<BasisLabel>> levels;
    for (auto& l : levels_j) levels.push_back(labels_from(l.at("basis")));
    std::vector<std::vector<Mat>> faces(static_cast<size_t>(top) + 1);
    std::vector<std::vector<Mat>> degens(static_cast<size_t>(top) + 1);
    for (int s = 1; s <= top; ++s) {
        auto& fl = levels_j[static_cast<size_t>(s)].at("faces");
        for (int i = 0; i <= s; ++i)
            faces[static_cast<size_t>(s)].push_back(
                mat_from(ctx, fl[static_cast<size_t>(i)],
                         static_cast<int>(levels[static_cast<size_t>(s - 1)].size()),
                         static_cast<int>(levels[static_cast<size_t>(s)].size())));
    }
    for (int s = 0; s < top; ++s) {
        auto& dl = levels_j[static_cast<size_t>(s)].at("degeneracies");
        for (int i = 0; i <= s; ++i)
            degens[static_cast<size_t>(s)].push_back(
                mat_from(ctx, dl[static_cast<size_t>(i)],
                         static_cast<int>(levels[static_cast<size_t>(s + 1)].size()),
                         static_cast<int>(levels[static_cast<size_t>(s)].size())));
    }
    return SimplicialModule(ctx, levels, faces, degens);
}

}  // namespace thetak

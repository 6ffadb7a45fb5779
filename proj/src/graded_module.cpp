#include "thetak/graded_module.hpp"

#include <algorithm>

namespace thetak {

std::vector<int> ModulePart::exponents(int precision) const {
    std::vector<int> out = torsion;
    for (int i = 0; i < free; ++i) out.push_back(precision);
    return out;
}

ModulePart ModulePart::from_exponents(const std::vector<int>& exps, int precision) {
    ModulePart p;
    for (int e : exps) {
        if (e <= 0) continue;
        if (e >= precision)
            ++p.free;
        else
            p.torsion.push_back(e);
    }
    std::sort(p.torsion.begin(), p.torsion.end());
    return p;
}

std::string ModulePart::str(int64_t p) const {
    if (is_trivial()) return "0";
    std::string s;
    auto app = [&s](const std::string& t) {
        if (!s.empty()) s += " + ";
        s += t;
    };
    if (free == 1) app("Zp");
    if (free > 1) app("Zp^" + std::to_string(free));
    for (int e : torsion) app("Z/" + std::to_string(p) + "^" + std::to_string(e));
    return s;
}

GradedModule GradedModule::concentrated(const PadicContext& ctx, int degree, ModulePart part) {
    GradedModule m(ctx);
    m.set_part(degree, std::move(part));
    return m;
}

GradedModule GradedModule::free_module(const PadicContext& ctx, int degree, int rank) {
    ModulePart p;
    p.free = rank;
    return concentrated(ctx, degree, p);
}

ModulePart GradedModule::part_or_zero(int degree) const {
    auto it = parts_.find(degree);
    return it == parts_.end() ? ModulePart{} : it->second;
}

void GradedModule::set_part(int degree, ModulePart p) {
    std::sort(p.torsion.begin(), p.torsion.end());
    if (p.is_trivial())
        parts_.erase(degree);
    else
        parts_[degree] = std::move(p);
}

bool GradedModule::is_trivial() const {
    for (auto& [d, p] : parts_)
        if (!p.is_trivial()) return false;
    return true;
}

bool GradedModule::operator==(const GradedModule& o) const {
    GradedModule a = *this, b = o;
    a.prune();
    b.prune();
    return a.parts_ == b.parts_;
}

void GradedModule::prune() {
    for (auto it = parts_.begin(); it != parts_.end();)
        it = it->second.is_trivial() ? parts_.erase(it) : std::next(it);
}

namespace {
int mod2(int d) { return ((d % 2) + 2) % 2; }
}  // namespace

ModulePart GradedModule::even_part() const {
    ModulePart out;
    for (auto& [d, p] : parts_)
        if (mod2(d) == 0) {
            out.free += p.free;
            out.torsion.insert(out.torsion.end(), p.torsion.begin(), p.torsion.end());
        }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

ModulePart GradedModule::odd_part() const {
    ModulePart out;
    for (auto& [d, p] : parts_)
        if (mod2(d) == 1) {
            out.free += p.free;
            out.torsion.insert(out.torsion.end(), p.torsion.begin(), p.torsion.end());
        }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

GradedModule GradedModule::reduce_z2() const {
    GradedModule m(*ctx_);
    m.set_part(0, even_part());
    m.set_part(1, odd_part());
    return m;
}

ModulePart tensor_parts(const ModulePart& a, const ModulePart& b, int precision) {
    // Z/p^e (x) Z/p^f = Z/p^min(e,f); free summands behave as exponent N.
    std::vector<int> out;
    for (int e : a.exponents(precision))
        for (int f : b.exponents(precision)) out.push_back(std::min(e, f));
    return ModulePart::from_exponents(out, precision);
}

GradedModule GradedModule::tensor(const GradedModule& o) const {
    GradedModule m(*ctx_);
    for (auto& [d1, p1] : parts_)
        for (auto& [d2, p2] : o.parts_) {
            ModulePart t = tensor_parts(p1, p2, ctx_->precision());
            ModulePart cur = m.part_or_zero(d1 + d2);
            cur.free += t.free;
            cur.torsion.insert(cur.torsion.end(), t.torsion.begin(), t.torsion.end());
            m.set_part(d1 + d2, cur);
        }
    return m;
}

GradedModule GradedModule::direct_sum(const GradedModule& o) const {
    GradedModule m = *this;
    for (auto& [d, p] : o.parts_) {
        ModulePart cur = m.part_or_zero(d);
        cur.free += p.free;
        cur.torsion.insert(cur.torsion.end(), p.torsion.begin(), p.torsion.end());
        m.set_part(d, cur);
    }
    return m;
}

std::pair<GradedModule, GradedModule> GradedModule::derived_completion() const {
    return {*this, GradedModule(*ctx_)};
}

nlohmann::ordered_json GradedModule::to_json() const {
    nlohmann::ordered_json j;
    auto part_json = [](const ModulePart& p) {
        nlohmann::ordered_json pj;
        pj["free"] = p.free;
        pj["torsion"] = p.torsion;
        return pj;
    };
    j["even"] = part_json(even_part());
    j["odd"] = part_json(odd_part());
    bool z2_only = true;
    for (auto& [d, p] : parts_)
        if (d != 0 && d != 1) z2_only = false;
    if (!z2_only) {
        nlohmann::ordered_json degs;
        for (auto& [d, p] : parts_)
            if (!p.is_trivial()) degs[std::to_string(d)] = part_json(p);
        j["by_degree"] = degs;
    }
    return j;
}

std::string GradedModule::str() const {
    if (is_trivial()) return "0";
    std::string s;
    for (auto& [d, p] : parts_) {
        if (p.is_trivial()) continue;
        if (!s.empty()) s += ", ";
        s += "deg " + std::to_string(d) + ": " + p.str(ctx_->p());
    }
    return s;
}

}  // namespace thetak

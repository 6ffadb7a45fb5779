#include "thetak/algebra.hpp"

#include <algorithm>

namespace thetak {

AlgebraPresentation::AlgebraPresentation(const PadicContext& ctx, std::vector<Generator> gens)
    : ctx_(&ctx), gens_(std::move(gens)) {
    for (auto& g : gens_) {
        if (g.kind == GenKind::TruncatedPoly) {
            if (g.odd()) throw error("AlgebraPresentation: truncated-poly generators are even");
            if (g.trunc < 2) throw error("AlgebraPresentation: truncation exponent must be >= 2");
        } else if (!g.odd()) {
            throw error("AlgebraPresentation: exterior generators must be odd");
        }
        key_ += g.name + "#" + std::to_string(g.degree) + "#" + std::to_string(g.trunc) + ";";
    }
    // Enumerate the monomial basis, odometer-style over exponent caps.
    size_t total = 1;
    for (auto& g : gens_) {
        total *= static_cast<size_t>(g.exponent_cap()) + 1;
        if (total > size_t(1) << 20) throw size_guard_error("AlgebraPresentation: rank guard");
    }
    std::vector<int> exp(gens_.size(), 0);
    for (size_t count = 0; count < total; ++count) {
        Monomial m;
        for (size_t i = 0; i < gens_.size(); ++i)
            if (exp[i] > 0) m.emplace_back(static_cast<int>(i), exp[i]);
        basis_.push_back(m);
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (++exp[i] <= gens_[i].exponent_cap()) break;
            exp[i] = 0;
        }
    }
    std::sort(basis_.begin(), basis_.end());
    for (size_t i = 0; i < basis_.size(); ++i) basis_index_[basis_[i]] = static_cast<int>(i);
}

PresPtr make_presentation(const PadicContext& ctx, std::vector<Generator> gens) {
    return std::make_shared<AlgebraPresentation>(ctx, std::move(gens));
}

int AlgebraPresentation::basis_index(const Monomial& m) const {
    auto it = basis_index_.find(m);
    if (it == basis_index_.end()) throw error("basis_index: unknown monomial");
    return it->second;
}

int AlgebraPresentation::monomial_degree(const Monomial& m) const {
    int d = 0;
    for (auto& [g, e] : m) d += gens_[static_cast<size_t>(g)].degree * e;
    return d;
}

int AlgebraPresentation::monomial_parity(const Monomial& m) const {
    return ((monomial_degree(m) % 2) + 2) % 2;
}

int AlgebraPresentation::odd_factor_count(const Monomial& m) const {
    int c = 0;
    for (auto& [g, e] : m)
        if (gens_[static_cast<size_t>(g)].odd()) c += e;
    return c;
}

std::string AlgebraPresentation::monomial_str(const Monomial& m) const {
    if (m.empty()) return "1";
    std::string s;
    for (auto& [g, e] : m) {
        if (!s.empty()) s += "*";
        s += gens_[static_cast<size_t>(g)].name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::optional<std::pair<Monomial, int>> AlgebraPresentation::mono_mul(const Monomial& a,
                                                                      const Monomial& b) const {
    // Sign: each odd factor of b crosses the odd factors of a with larger
    // generator index.
    std::vector<int> odd_suffix(a.size() + 1, 0);
    for (size_t i = a.size(); i-- > 0;) {
        int oc = gens_[static_cast<size_t>(a[i].first)].odd() ? a[i].second : 0;
        odd_suffix[i] = odd_suffix[i + 1] + oc;
    }
    Monomial out;
    out.reserve(a.size() + b.size());
    int sign = 1;
    size_t i = 0;
    for (auto& [g, e] : b) {
        while (i < a.size() && a[i].first < g) {
            out.push_back(a[i]);
            ++i;
        }
        const Generator& gen = gens_[static_cast<size_t>(g)];
        if (gen.odd() && (odd_suffix[i] & 1)) sign = -sign;
        int total = e;
        if (i < a.size() && a[i].first == g) {
            total += a[i].second;
            ++i;
        }
        if (total > gen.exponent_cap()) return std::nullopt;  // relation kills it
        out.emplace_back(g, total);
    }
    while (i < a.size()) {
        out.push_back(a[i]);
        ++i;
    }
    return std::make_pair(std::move(out), sign);
}

AlgebraElement AlgebraElement::scalar(const AlgebraPresentation& pres, const PadicScalar& c) {
    AlgebraElement e(pres);
    e.add_term({}, c);
    return e;
}

AlgebraElement AlgebraElement::scalar(const AlgebraPresentation& pres, int64_t c) {
    return scalar(pres, PadicScalar(pres.ctx(), c));
}

AlgebraElement AlgebraElement::gen(const AlgebraPresentation& pres, int g) {
    AlgebraElement e(pres);
    e.add_term({{g, 1}}, PadicScalar(pres.ctx(), 1));
    return e;
}

AlgebraElement AlgebraElement::monomial(const AlgebraPresentation& pres, const Monomial& m,
                                        const PadicScalar& c) {
    AlgebraElement e(pres);
    e.add_term(m, c);
    return e;
}

int AlgebraElement::min_prec() const {
    int p = pres_ ? pres_->ctx().precision() : 0;
    for (auto& [m, c] : terms_) p = std::min(p, c.prec());
    return p;
}

void AlgebraElement::add_term(const Monomial& m, const PadicScalar& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

PadicScalar AlgebraElement::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? PadicScalar(pres_->ctx(), 0) : it->second;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r(*pres_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    if (!pres_->same_as(*o.pres_)) throw error("AlgebraElement: presentation mismatch");
    AlgebraElement r(*pres_);
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) {
            auto prod = pres_->mono_mul(ma, mb);
            if (!prod) continue;
            PadicScalar c = ca * cb;
            if (prod->second < 0) c = -c;
            r.add_term(prod->first, c);
        }
    return r;
}

AlgebraElement AlgebraElement::scale(const PadicScalar& c) const {
    AlgebraElement r(*pres_);
    for (auto& [m, cc] : terms_) r.add_term(m, cc * c);
    return r;
}

AlgebraElement AlgebraElement::scale(int64_t c) const {
    return scale(PadicScalar(pres_->ctx(), c));
}

AlgebraElement AlgebraElement::pow(int e) const {
    AlgebraElement r = scalar(*pres_, 1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

AlgebraElement AlgebraElement::exact_div_p(int k) const {
    AlgebraElement r(*pres_);
    for (auto& [m, c] : terms_) r.add_term(m, c.exact_div_p(k));
    return r;
}

bool AlgebraElement::homogeneous_parity() const {
    if (terms_.empty()) return true;
    int par = pres_->monomial_parity(terms_.begin()->first);
    for (auto& [m, c] : terms_)
        if (pres_->monomial_parity(m) != par) return false;
    return true;
}

int AlgebraElement::parity() const {
    if (terms_.empty()) return 0;
    if (!homogeneous_parity()) throw error("parity: element is not parity-homogeneous");
    return pres_->monomial_parity(terms_.begin()->first);
}

AlgebraElement AlgebraElement::even_component() const {
    AlgebraElement r(*pres_);
    for (auto& [m, c] : terms_)
        if (pres_->monomial_parity(m) == 0) r.terms_.emplace(m, c);
    return r;
}

AlgebraElement AlgebraElement::odd_component() const {
    AlgebraElement r(*pres_);
    for (auto& [m, c] : terms_)
        if (pres_->monomial_parity(m) == 1) r.terms_.emplace(m, c);
    return r;
}

int AlgebraElement::max_layer() const {
    int l = -1;
    for (auto& [m, c] : terms_)
        for (auto& [g, e] : m) {
            const Generator& gen = pres_->gens()[static_cast<size_t>(g)];
            if (gen.kind == GenKind::FreeThetaLayer) l = std::max(l, gen.layer);
        }
    return l;
}

int AlgebraElement::word_length_max() const {
    int l = 0;
    for (auto& [m, c] : terms_) {
        int w = 0;
        for (auto& [g, e] : m) w += e;
        l = std::max(l, w);
    }
    return l;
}

bool AlgebraElement::equals_mod(const AlgebraElement& o, int k) const {
    AlgebraElement d = *this - o;
    for (auto& [m, c] : d.terms_) {
        PadicScalar z(pres_->ctx(), 0, c.prec());
        if (!c.equals_mod(z, k)) return false;
    }
    return true;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
    return equals_mod(o, pres_->ctx().precision());
}

Mat AlgebraElement::to_vector() const {
    Mat v(pres_->ctx(), pres_->rank(), 1);
    int prec = pres_->ctx().precision();
    for (auto& [m, c] : terms_) {
        v.at(pres_->basis_index(m), 0) = c.residue();
        prec = std::min(prec, c.prec());
    }
    v.set_prec(prec);
    return v;
}

AlgebraElement AlgebraElement::from_vector(const AlgebraPresentation& pres, const Mat& v) {
    AlgebraElement e(pres);
    for (int i = 0; i < v.rows(); ++i)
        if (v.at(i, 0) != 0)
            e.add_term(pres.basis()[static_cast<size_t>(i)],
                       PadicScalar(pres.ctx(), v.at(i, 0), v.prec()));
    return e;
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += c.str() + "*" + pres_->monomial_str(m);
    }
    return s;
}

}  // namespace thetak

#include "thetak/theta.hpp"

#include <algorithm>

namespace thetak {

namespace {

int vp_factorial(int64_t p, int j) {
    int v = 0;
    for (int64_t q = p; q <= j; q *= p) v += j / static_cast<int>(q);
    return v;
}

int64_t factorial(int j) {
    int64_t f = 1;
    for (int i = 2; i <= j; ++i) f *= i;
    return f;
}

// Exact integer binomial for small arguments.
int64_t binom_int(int64_t k, int j) {
    __int128 num = 1;
    for (int i = 0; i < j; ++i) num *= (k - i);
    return static_cast<int64_t>(num / factorial(j));
}

}  // namespace

PadicScalar binom_residue(const PadicContext& ctx, int64_t k, int j) {
    if (j == 0) return PadicScalar(ctx, 1);
    int v = vp_factorial(ctx.p(), j);
    // Need the falling factorial mod p^{N+v} to divide by p^v exactly.
    __int128 mod = ctx.modulus();
    for (int i = 0; i < v; ++i) mod *= ctx.p();
    __int128 num = 1;
    for (int i = 0; i < j; ++i) {
        __int128 f = (k - i) % mod;
        if (f < 0) f += mod;
        num = (num * f) % mod;
    }
    int64_t fact = factorial(j);
    int64_t pv = 1;
    for (int i = 0; i < v; ++i) pv *= ctx.p();
    if (num % pv != 0) throw error("binom_residue: unexpected non-divisibility");
    int64_t reduced = static_cast<int64_t>((num / pv) % ctx.modulus());
    int64_t unit = ctx.inv(ctx.reduce(fact / pv));
    return PadicScalar(ctx, ctx.mul(reduced, unit), ctx.precision() - v);
}

ThetaAlgebra::ThetaAlgebra(PresPtr pres,
                           std::vector<std::optional<AlgebraElement>> theta_gen,
                           std::vector<AlgebraElement> psi_gen, std::optional<Mat> psi_matrix,
                           DepthMode mode)
    : pres_(std::move(pres)), theta_gen_(std::move(theta_gen)), psi_gen_(std::move(psi_gen)),
      psi_matrix_(std::move(psi_matrix)), mode_(mode) {
    if (static_cast<int>(theta_gen_.size()) != pres_->gen_count() ||
        static_cast<int>(psi_gen_.size()) != pres_->gen_count())
        throw error("ThetaAlgebra: one theta and psi image per generator required");
}

AlgebraElement ThetaAlgebra::theta_gen_image(int g) const {
    const auto& img = theta_gen_[static_cast<size_t>(g)];
    if (img) return *img;
    if (mode_ == DepthMode::TruncateToZero) return AlgebraElement(*pres_);
    throw depth_exceeded_error("theta: generator " + pres_->gens()[static_cast<size_t>(g)].name +
                               " is at the truncation depth");
}

void ThetaAlgebra::override_theta_gen(int g, AlgebraElement image) {
    theta_gen_[static_cast<size_t>(g)] = std::move(image);
    theta_cache_.clear();
}

bool ThetaAlgebra::is_truncated_poly() const {
    return pres_->gen_count() == 1 && pres_->gens()[0].kind == GenKind::TruncatedPoly;
}

int ThetaAlgebra::top_layer() const {
    int l = -1;
    for (auto& g : pres_->gens())
        if (g.kind == GenKind::FreeThetaLayer) l = std::max(l, g.layer);
    return l;
}

AlgebraElement ThetaAlgebra::mono_pow_p(const Monomial& m) const {
    // (monomial)^p: any odd factor repeats p >= 3 times, killing the term.
    int64_t p = ctx().p();
    AlgebraElement zero(*pres_);
    Monomial out;
    for (auto& [g, e] : m) {
        const Generator& gen = pres_->gens()[static_cast<size_t>(g)];
        if (gen.odd()) return zero;
        int total = static_cast<int>(p) * e;
        if (total > gen.exponent_cap()) return zero;
        out.emplace_back(g, total);
    }
    return AlgebraElement::monomial(*pres_, out, PadicScalar(ctx(), 1));
}

AlgebraElement ThetaAlgebra::theta_mono(const Monomial& m) const {
    if (m.empty()) return AlgebraElement(*pres_);  // theta(1) = 0
    auto it = theta_cache_.find(m);
    if (it != theta_cache_.end()) return it->second;

    AlgebraElement result(*pres_);
    if (m.size() == 1 && m[0].second == 1) {
        result = theta_gen_image(m[0].first);
    } else {
        // Split off one generator factor u and recurse on the rest v.
        Monomial u{{m[0].first, 1}};
        Monomial v = m;
        if (v[0].second > 1)
            --v[0].second;
        else
            v.erase(v.begin());
        AlgebraElement theta_u = theta_gen_image(m[0].first);
        AlgebraElement theta_v = theta_mono(v);
        bool u_odd = pres_->gens()[static_cast<size_t>(m[0].first)].odd();
        bool v_odd = pres_->monomial_parity(v) == 1;
        if (u_odd && v_odd) {
            result = theta_u * theta_v;
        } else {
            AlgebraElement up = mono_pow_p(u);
            AlgebraElement vp = mono_pow_p(v);
            result = theta_u * vp + up * theta_v + (theta_u * theta_v).scale(ctx().p());
        }
    }
    theta_cache_.emplace(m, result);
    return result;
}

AlgebraElement ThetaAlgebra::theta_scalar(const PadicScalar& c) const {
    // Forced by psi^k = id on Z_p: theta(c) = (c - c^p)/p.
    PadicScalar t = (c - c.pow(ctx().p())).exact_div_p(1);
    return AlgebraElement::scalar(*pres_, t);
}

AlgebraElement ThetaAlgebra::theta_term(const PadicScalar& c, const Monomial& m) const {
    // theta(c*m) = theta(c) m^p + c^p theta(m) + p theta(c) theta(m).
    AlgebraElement theta_c = theta_scalar(c);
    AlgebraElement theta_m = theta_mono(m);
    AlgebraElement mp = mono_pow_p(m);
    return theta_c * mp + theta_m.scale(c.pow(ctx().p())) +
           (theta_c * theta_m).scale(ctx().p());
}

AlgebraElement ThetaAlgebra::theta(const AlgebraElement& e) const {
    if (!pres_->same_as(e.pres())) throw error("theta: presentation mismatch");
    AlgebraElement result(*pres_);
    // Odd part: additive and Z_p-linear.
    for (auto& [m, c] : e.terms())
        if (pres_->monomial_parity(m) == 1) result = result + theta_mono(m).scale(c);
    // Even part: per-term theta with the closed multinomial correction
    // (the iterated form of the even addition law).
    std::vector<std::pair<Monomial, PadicScalar>> evens;
    for (auto& [m, c] : e.terms())
        if (pres_->monomial_parity(m) == 0) evens.emplace_back(m, c);
    for (auto& [m, c] : evens) result = result + theta_term(c, m);
    if (evens.size() >= 2) {
        AlgebraElement s = e.even_component();
        AlgebraElement sum_powers(*pres_);
        for (auto& [m, c] : evens) {
            AlgebraElement mp = mono_pow_p(m);
            sum_powers = sum_powers + mp.scale(c.pow(ctx().p()));
        }
        AlgebraElement diff = s.pow(static_cast<int>(ctx().p())) - sum_powers;
        result = result - diff.exact_div_p(1);
    }
    return result;
}

AlgebraElement ThetaAlgebra::psi_apply(const std::vector<AlgebraElement>& gen_images,
                                       int64_t twist_unit, const AlgebraElement& e) const {
    AlgebraElement result(*pres_);
    PadicScalar inv_k = PadicScalar(ctx(), twist_unit).invert();
    for (auto& [m, c] : e.terms()) {
        AlgebraElement prod = AlgebraElement::scalar(*pres_, c);
        for (auto& [g, exp] : m)
            for (int i = 0; i < exp; ++i) prod = prod * gen_images[static_cast<size_t>(g)];
        int odd = pres_->odd_factor_count(m);
        if (odd >= 2) prod = prod.scale(inv_k.pow(odd / 2));
        result = result + prod;
    }
    return result;
}

AlgebraElement ThetaAlgebra::psi_g(const AlgebraElement& e) const {
    return psi_apply(psi_gen_, ctx().generator(), e);
}

AlgebraElement ThetaAlgebra::psi_unit(int64_t k, const AlgebraElement& e) const {
    k = ctx().reduce(k);
    if (is_truncated_poly()) {
        int cap = pres_->gens()[0].exponent_cap();
        AlgebraElement img(*pres_);
        for (int j = 1; j <= cap; ++j)
            img.add_term({{0, j}}, binom_residue(ctx(), k, j));
        return psi_apply({img}, k, e);
    }
    if (!psi_matrix_) throw error("psi_unit: no linear Adams structure on this algebra");
    int64_t exp = ctx().discrete_log(k);
    Mat mk = psi_matrix_->pow(exp);
    std::vector<AlgebraElement> images;
    images.reserve(static_cast<size_t>(pres_->gen_count()));
    for (int j = 0; j < pres_->gen_count(); ++j) {
        AlgebraElement img(*pres_);
        for (int i = 0; i < pres_->gen_count(); ++i)
            if (mk.at(i, j) != 0)
                img.add_term({{i, 1}}, PadicScalar(ctx(), mk.at(i, j)));
        images.push_back(img);
    }
    return psi_apply(images, k, e);
}

AlgebraElement ThetaAlgebra::psi_int(int64_t k, const AlgebraElement& e) const {
    if (k <= 0 || k % ctx().p() == 0) throw non_unit_error("psi_int: k must be coprime to p");
    if (is_truncated_poly()) {
        int cap = pres_->gens()[0].exponent_cap();
        AlgebraElement img(*pres_);
        for (int j = 1; j <= cap && j <= k; ++j)
            img.add_term({{0, j}}, PadicScalar(ctx(), ctx().reduce(binom_int(k, j))));
        return psi_apply({img}, k, e);
    }
    return psi_unit(k, e);
}

AlgebraElement ThetaAlgebra::psi_p(const AlgebraElement& e) const {
    return e.pow(static_cast<int>(ctx().p())) + theta(e).scale(ctx().p());
}

ThetaAlgebra exterior_theta_algebra(const MoravaModule& G) {
    if (!G.odd_free())
        throw error("exterior_theta_algebra: G must be odd, finitely generated and free");
    if (!G.theta_G) throw error("exterior_theta_algebra: theta_G required");
    if (!G.theta_commutes)
        throw error("exterior_theta_algebra: theta_G is not a Morava-module morphism "
                    "(it does not commute with psi_g)");
    const PadicContext& ctx = G.module.ctx();
    std::vector<Generator> gens;
    std::vector<std::pair<int, int>> layout;  // (degree, index within block)
    int idx = 0;
    for (auto& [d, part] : G.module.parts())
        for (int i = 0; i < part.free; ++i) {
            Generator g;
            g.name = idx < static_cast<int>(G.generator_names.size())
                         ? G.generator_names[static_cast<size_t>(idx)]
                         : "x" + std::to_string(idx + 1);
            g.degree = d;
            g.kind = GenKind::Exterior;
            gens.push_back(g);
            layout.emplace_back(d, i);
            ++idx;
        }
    PresPtr prs = make_presentation(ctx, gens);
    const AlgebraPresentation& pres = *prs;
    int n = pres.gen_count();
    Mat psi_mat(ctx, n, n);
    std::vector<std::optional<AlgebraElement>> theta_images;
    std::vector<AlgebraElement> psi_images;
    for (int j = 0; j < n; ++j) {
        auto [d, jj] = layout[static_cast<size_t>(j)];
        Mat tb = G.theta_G->block_or_zero(d);
        Mat pb = G.psi_g.block_or_zero(d);
        AlgebraElement t(pres), ps(pres);
        for (int i = 0; i < n; ++i) {
            auto [di, ii] = layout[static_cast<size_t>(i)];
            if (di != d) continue;
            if (tb.at(ii, jj) != 0) t.add_term({{i, 1}}, PadicScalar(ctx, tb.at(ii, jj)));
            if (pb.at(ii, jj) != 0) {
                ps.add_term({{i, 1}}, PadicScalar(ctx, pb.at(ii, jj)));
                psi_mat.at(i, j) = pb.at(ii, jj);
            }
        }
        theta_images.emplace_back(t);
        psi_images.push_back(ps);
    }
    return ThetaAlgebra(prs, theta_images, psi_images, psi_mat, DepthMode::Strict);
}

ThetaAlgebra free_theta_algebra(const MoravaModule& G, int depth, DepthMode mode) {
    if (!G.odd_free())
        throw error("free_theta_algebra: G must be odd, finitely generated and free");
    if (depth < 0) throw error("free_theta_algebra: depth must be >= 0");
    const PadicContext& ctx = G.module.ctx();
    std::vector<std::pair<int, std::string>> base;  // (degree, name) per G-generator
    int idx = 0;
    for (auto& [d, part] : G.module.parts())
        for (int i = 0; i < part.free; ++i) {
            std::string nm = idx < static_cast<int>(G.generator_names.size())
                                 ? G.generator_names[static_cast<size_t>(idx)]
                                 : "x" + std::to_string(idx + 1);
            base.emplace_back(d, nm);
            ++idx;
        }
    int n = static_cast<int>(base.size());
    std::vector<Generator> gens;
    for (int t = 0; t <= depth; ++t)
        for (int i = 0; i < n; ++i) {
            Generator g;
            g.name = t == 0 ? base[static_cast<size_t>(i)].second
                            : "th" + std::to_string(t) + "(" + base[static_cast<size_t>(i)].second + ")";
            g.degree = base[static_cast<size_t>(i)].first;
            g.kind = GenKind::FreeThetaLayer;
            g.base = i;
            g.layer = t;
            gens.push_back(g);
        }
    PresPtr prs = make_presentation(ctx, gens);
    const AlgebraPresentation& pres = *prs;
    auto gen_at = [n](int t, int i) { return t * n + i; };
    std::vector<std::optional<AlgebraElement>> theta_images;
    std::vector<AlgebraElement> psi_images;
    Mat psi_mat(ctx, pres.gen_count(), pres.gen_count());
    for (int t = 0; t <= depth; ++t)
        for (int i = 0; i < n; ++i) {
            if (t < depth)
                theta_images.emplace_back(AlgebraElement::gen(pres, gen_at(t + 1, i)));
            else
                theta_images.emplace_back(std::nullopt);  // truncation depth
            int d = base[static_cast<size_t>(i)].first;
            Mat pb = G.psi_g.block_or_zero(d);
            // Index of generator i within its degree block of G.
            int ii = 0;
            for (int q = 0; q < i; ++q)
                if (base[static_cast<size_t>(q)].first == d) ++ii;
            AlgebraElement ps(pres);
            int jj = 0;
            for (int q = 0; q < n; ++q) {
                if (base[static_cast<size_t>(q)].first != d) continue;
                if (pb.at(jj, ii) != 0) {
                    ps.add_term({{gen_at(t, q), 1}}, PadicScalar(ctx, pb.at(jj, ii)));
                    psi_mat.at(gen_at(t, q), gen_at(t, i)) = pb.at(jj, ii);
                }
                ++jj;
            }
            psi_images.push_back(ps);
        }
    return ThetaAlgebra(prs, theta_images, psi_images, psi_mat, mode);
}

ThetaAlgebra truncated_poly_theta_ring(const PadicContext& ctx, int n, const std::string& name) {
    if (n < 2) throw error("truncated_poly_theta_ring: n >= 2 required");
    Generator g;
    g.name = name;
    g.degree = 0;
    g.kind = GenKind::TruncatedPoly;
    g.trunc = n;
    PresPtr prs = make_presentation(ctx, {g});
    const AlgebraPresentation& pres = *prs;
    // theta(x) = (1/p) sum_{j=1}^{p-1} C(p,j) x^j; the binomials are exactly
    // divisible by p.
    AlgebraElement theta_x(pres);
    for (int j = 1; j < static_cast<int>(ctx.p()) && j <= n - 1; ++j) {
        int64_t c = binom_int(ctx.p(), j) / ctx.p();
        theta_x.add_term({{0, j}}, PadicScalar(ctx, c));
    }
    AlgebraElement psi_x(pres);
    for (int j = 1; j <= n - 1 && j <= ctx.generator(); ++j)
        psi_x.add_term({{0, j}}, PadicScalar(ctx, ctx.reduce(binom_int(ctx.generator(), j))));
    return ThetaAlgebra(prs, {theta_x}, {psi_x}, std::nullopt, DepthMode::Strict);
}

AlgebraElement ThetaAlgebraMap::apply(const AlgebraElement& e) const {
    AlgebraElement out(dst->pres());
    for (auto& [m, c] : e.terms()) {
        AlgebraElement prod = AlgebraElement::scalar(dst->pres(), c);
        for (auto& [g, exp] : m)
            for (int i = 0; i < exp; ++i) prod = prod * gen_images[static_cast<size_t>(g)];
        out = out + prod;
    }
    return out;
}

ThetaAlgebraMap universal_map(const ThetaAlgebra& free_src,
                              const std::vector<AlgebraElement>& base_images,
                              const ThetaAlgebra& R) {
    ThetaAlgebraMap map;
    map.src = &free_src;
    map.dst = &R;
    map.gen_images.resize(static_cast<size_t>(free_src.pres().gen_count()));
    for (int g = 0; g < free_src.pres().gen_count(); ++g) {
        const Generator& gen = free_src.pres().gens()[static_cast<size_t>(g)];
        if (gen.kind != GenKind::FreeThetaLayer)
            throw error("universal_map: source must be a free theta-algebra");
        AlgebraElement img = base_images.at(static_cast<size_t>(gen.base));
        if (!img.is_zero() && img.parity() != 1)
            throw error("universal_map: generator images must be odd");
        for (int t = 0; t < gen.layer; ++t) img = R.theta(img);
        map.gen_images[static_cast<size_t>(g)] = img;
    }
    return map;
}

bool verify_intertwines_theta(const ThetaAlgebraMap& map, int samples, uint64_t seed) {
    Rng rng(seed);
    const ThetaAlgebra& src = *map.src;
    int top = src.top_layer();
    int headroom = top >= 1 ? top - 1 : -1;
    for (int s = 0; s < samples; ++s) {
        AlgebraElement x =
            random_homogeneous(src, rng, static_cast<int>(rng.below(2)), 3, headroom);
        AlgebraElement lhs = map.apply(src.theta(x));
        AlgebraElement rhs = map.dst->theta(map.apply(x));
        if (!lhs.equals_mod(rhs, src.ctx().precision() - 2)) return false;
    }
    return true;
}

AlgebraElement random_homogeneous(const ThetaAlgebra& R, Rng& rng, int parity, int max_terms,
                                  int max_layer) {
    const AlgebraPresentation& pres = R.pres();
    std::vector<const Monomial*> pool;
    for (auto& m : pres.basis()) {
        if (pres.monomial_parity(m) != parity) continue;
        if (max_layer >= 0) {
            bool ok = true;
            for (auto& [g, e] : m) {
                const Generator& gen = pres.gens()[static_cast<size_t>(g)];
                if (gen.kind == GenKind::FreeThetaLayer && gen.layer > max_layer) ok = false;
            }
            if (!ok) continue;
        }
        pool.push_back(&m);
    }
    AlgebraElement e(pres);
    if (pool.empty()) return e;
    int terms = 1 + static_cast<int>(rng.below(max_terms));
    for (int t = 0; t < terms; ++t) {
        const Monomial& m = *pool[static_cast<size_t>(rng.below(static_cast<int64_t>(pool.size())))];
        e.add_term(m, PadicScalar(pres.ctx(), rng.below(pres.ctx().modulus())));
    }
    return e;
}

namespace {

int64_t random_unit(const PadicContext& ctx, Rng& rng) {
    // Small integer units keep discrete logs cheap and exact.
    while (true) {
        int64_t k = 2 + rng.below(40);
        if (k % ctx.p() != 0) return k;
    }
}

std::string witness_str(const AlgebraElement& lhs, const AlgebraElement& rhs) {
    return "lhs = " + lhs.str() + "; rhs = " + rhs.str();
}

}  // namespace

AxiomReport check_theta_axioms(const ThetaAlgebra& R, int samples, uint64_t seed) {
    const PadicContext& ctx = R.ctx();
    int64_t p = ctx.p();
    int cmp = ctx.precision() - 2;
    AxiomReport rep;
    rep.samples = samples;
    rep.compare_precision = cmp;
    Rng rng(seed);
    int headroom = R.top_layer() >= 1 ? R.top_layer() - 1 : -1;
    auto fail = [&rep](const std::string& axiom, const std::string& detail) {
        rep.pass = false;
        rep.per_axiom[axiom] = false;
        if (rep.failures.size() < 8) rep.failures.push_back({axiom, detail});
    };
    for (const char* name : {"i", "ii", "iii", "iv", "v"}) rep.per_axiom[name] = true;

    // (ii) theta(1) = 0, exactly.
    AlgebraElement one = AlgebraElement::scalar(R.pres(), 1);
    if (!R.theta(one).is_zero()) fail("ii", "theta(1) != 0");

    for (int s = 0; s < samples; ++s) {
        int px = static_cast<int>(rng.below(2));
        int py = static_cast<int>(rng.below(2));
        AlgebraElement x = random_homogeneous(R, rng, px, 3, headroom);
        AlgebraElement y = random_homogeneous(R, rng, py, 3, headroom);
        int64_t k = random_unit(ctx, rng);

        // (i) psi^k is Z_p-linear and multiplicative with the odd twist.
        {
            int64_t a = rng.below(ctx.modulus()), b = rng.below(ctx.modulus());
            AlgebraElement lin_l = R.psi_unit(k, x.scale(a) + y.scale(b));
            AlgebraElement lin_r = R.psi_unit(k, x).scale(a) + R.psi_unit(k, y).scale(b);
            if (!lin_l.equals_mod(lin_r, cmp)) fail("i", "linearity: " + witness_str(lin_l, lin_r));
            AlgebraElement prod_l = R.psi_unit(k, x * y);
            AlgebraElement prod_r = R.psi_unit(k, x) * R.psi_unit(k, y);
            if (px == 1 && py == 1)
                prod_r = prod_r.scale(PadicScalar(ctx, k).invert());
            if (!prod_l.equals_mod(prod_r, cmp))
                fail("i", "multiplicativity: " + witness_str(prod_l, prod_r));
        }

        // (iii) theta and psi^k commute.
        {
            AlgebraElement lhs = R.theta(R.psi_unit(k, x));
            AlgebraElement rhs = R.psi_unit(k, R.theta(x));
            if (!lhs.equals_mod(rhs, cmp)) fail("iii", witness_str(lhs, rhs));
        }

        // (iv) addition law for same-parity pairs.
        if (px == py) {
            AlgebraElement lhs = R.theta(x + y);
            AlgebraElement rhs = R.theta(x) + R.theta(y);
            if (px == 0) {
                for (int i = 1; i < p; ++i) {
                    int64_t c = binom_int(p, i) / p;  // (1/p) C(p,i), an integer
                    rhs = rhs - (x.pow(i) * y.pow(static_cast<int>(p) - i)).scale(c);
                }
            }
            if (!lhs.equals_mod(rhs, cmp)) fail("iv", witness_str(lhs, rhs));
        }

        // (v) product law.
        {
            AlgebraElement lhs = R.theta(x * y);
            AlgebraElement rhs(R.pres());
            if (px == 1 && py == 1) {
                rhs = R.theta(x) * R.theta(y);
            } else {
                rhs = R.theta(x) * y.pow(static_cast<int>(p)) +
                      x.pow(static_cast<int>(p)) * R.theta(y) +
                      (R.theta(x) * R.theta(y)).scale(p);
            }
            if (!lhs.equals_mod(rhs, cmp)) fail("v", witness_str(lhs, rhs));
        }
    }
    return rep;
}

}  // namespace thetak

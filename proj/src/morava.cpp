#include "thetak/morava.hpp"

#include <algorithm>

namespace thetak {

namespace {

Mat relation_matrix(const PadicContext& ctx, const ModulePart& part) {
    // Columns: one relation p^e * gen = 0 per torsion generator.
    int n = part.summand_count();
    Mat rel(ctx, n, static_cast<int>(part.torsion.size()));
    for (size_t j = 0; j < part.torsion.size(); ++j)
        rel.at(static_cast<int>(j), static_cast<int>(j)) = ctx.p_pow(part.torsion[j]);
    return rel;
}

}  // namespace

GradedLinearMap::GradedLinearMap(GradedModule dom, GradedModule cod, int degree_shift,
                                 std::map<int, Mat> blocks)
    : dom_(std::move(dom)), cod_(std::move(cod)), shift_(degree_shift),
      blocks_(std::move(blocks)) {
    const PadicContext& ctx = dom_.ctx();
    for (auto& [d, b] : blocks_) {
        ModulePart src = dom_.part_or_zero(d);
        ModulePart dst = cod_.part_or_zero(d + shift_);
        if (b.rows() != dst.summand_count() || b.cols() != src.summand_count())
            throw error("GradedLinearMap: block shape mismatch at degree " + std::to_string(d));
        // Relations map into relations: p^{e_j} * f(gen_j) must die in the target.
        auto se = src.exponents(ctx.precision());
        auto de = dst.exponents(ctx.precision());
        for (int j = 0; j < b.cols(); ++j)
            for (int i = 0; i < b.rows(); ++i) {
                int need = de[static_cast<size_t>(i)] - se[static_cast<size_t>(j)];
                if (need > 0 && ctx.valuation(b.at(i, j)) < need)
                    throw error("GradedLinearMap: not well-defined on presentations");
            }
    }
}

GradedLinearMap GradedLinearMap::single_block(const GradedModule& dom, const GradedModule& cod,
                                              int src_degree, int dst_degree, Mat block) {
    std::map<int, Mat> blocks;
    blocks.emplace(src_degree, std::move(block));
    return GradedLinearMap(dom, cod, dst_degree - src_degree, std::move(blocks));
}

GradedLinearMap GradedLinearMap::identity(const GradedModule& m) {
    std::map<int, Mat> blocks;
    for (auto& [d, p] : m.parts())
        blocks.emplace(d, Mat::identity(m.ctx(), p.summand_count()));
    return GradedLinearMap(m, m, 0, std::move(blocks));
}

GradedLinearMap GradedLinearMap::zero(const GradedModule& dom, const GradedModule& cod,
                                      int degree_shift) {
    std::map<int, Mat> blocks;
    for (auto& [d, p] : dom.parts())
        blocks.emplace(d, Mat(dom.ctx(), cod.part_or_zero(d + degree_shift).summand_count(),
                              p.summand_count()));
    return GradedLinearMap(dom, cod, degree_shift, std::move(blocks));
}

Mat GradedLinearMap::block_or_zero(int src_degree) const {
    auto it = blocks_.find(src_degree);
    if (it != blocks_.end()) return it->second;
    return Mat(dom_.ctx(), cod_.part_or_zero(src_degree + shift_).summand_count(),
               dom_.part_or_zero(src_degree).summand_count());
}

GradedLinearMap GradedLinearMap::compose(const GradedLinearMap& inner) const {
    std::map<int, Mat> blocks;
    for (auto& [d, b] : inner.blocks_)
        blocks.emplace(d, block_or_zero(d + inner.shift_) * b);
    return GradedLinearMap(inner.dom_, cod_, shift_ + inner.shift_, std::move(blocks));
}

GradedLinearMap GradedLinearMap::operator+(const GradedLinearMap& o) const {
    std::map<int, Mat> blocks;
    for (auto& [d, p] : dom_.parts())
        blocks.emplace(d, block_or_zero(d) + o.block_or_zero(d));
    return GradedLinearMap(dom_, cod_, shift_, std::move(blocks));
}

GradedLinearMap GradedLinearMap::operator-(const GradedLinearMap& o) const {
    std::map<int, Mat> blocks;
    for (auto& [d, p] : dom_.parts())
        blocks.emplace(d, block_or_zero(d) - o.block_or_zero(d));
    return GradedLinearMap(dom_, cod_, shift_, std::move(blocks));
}

GradedLinearMap GradedLinearMap::pow(int64_t e) const {
    if (shift_ != 0) throw error("GradedLinearMap: pow needs degree shift 0");
    GradedLinearMap r = identity(dom_);
    GradedLinearMap base = *this;
    while (e > 0) {
        if (e & 1) r = base.compose(r);
        base = base.compose(base);
        e >>= 1;
    }
    return r;
}

bool GradedLinearMap::is_zero() const {
    for (auto& [d, b] : blocks_)
        if (!b.is_zero()) return false;
    return true;
}

bool GradedLinearMap::equals_mod(const GradedLinearMap& o, int k) const {
    if (shift_ != o.shift_) return false;
    for (auto& [d, p] : dom_.parts())
        if (!block_or_zero(d).equals_mod(o.block_or_zero(d), k)) return false;
    return true;
}

bool GradedLinearMap::operator==(const GradedLinearMap& o) const {
    return equals_mod(o, dom_.ctx().precision());
}

GradedModule cokernel(const GradedLinearMap& f) {
    if (!f.parity_preserving()) throw error("cokernel: parity-preserving map required");
    const PadicContext& ctx = f.domain().ctx();
    GradedModule out(ctx);
    for (auto& [d, dst] : f.codomain().parts()) {
        Mat block = f.block_or_zero(d - f.degree_shift());
        Mat rel = relation_matrix(ctx, dst);
        Mat full = block.hcat(rel);
        if (full.cols() == 0) {
            out.set_part(d, dst);
            continue;
        }
        SmithForm s = smith_normal_form(full);
        std::vector<int> exps;
        int n = std::min(full.rows(), full.cols());
        for (int i = 0; i < full.rows(); ++i)
            exps.push_back(i < n ? s.exponents[static_cast<size_t>(i)] : ctx.precision());
        out.set_part(d, ModulePart::from_exponents(exps, ctx.precision()));
    }
    return out;
}

KernelResult kernel(const GradedLinearMap& f) {
    const PadicContext& ctx = f.domain().ctx();
    int N = ctx.precision();
    KernelResult res;
    res.module = GradedModule(ctx);
    for (auto& [d, src] : f.domain().parts()) {
        Mat block = f.block_or_zero(d);
        bool src_free = src.torsion.empty();
        bool dst_free = f.codomain().part_or_zero(d + f.degree_shift()).torsion.empty();
        if (src_free && dst_free) {
            // Z_p-sense kernel of a map of free modules: only exact-zero
            // invariant factors contribute; near-ceiling pivots are flagged.
            SmithForm s = smith_normal_form(block);
            int zero_cols = 0;
            int n = std::min(block.rows(), block.cols());
            for (int j = 0; j < block.cols(); ++j) {
                int e = j < n ? s.exponents[static_cast<size_t>(j)] : N;
                if (e >= N)
                    ++zero_cols;
                else if (e >= N - 1)
                    res.precision_loss = true;
            }
            if (zero_cols > 0) {
                ModulePart p;
                p.free = zero_cols;
                res.module.set_part(d, p);
            }
        } else {
            // Presented case: honest Z/p^N kernel; exact for finite parts.
            Mat relN = relation_matrix(ctx, f.codomain().part_or_zero(d + f.degree_shift()));
            Mat relM = relation_matrix(ctx, src);
            Mat aug = block.hcat(relN);
            KernelGens k = kernel_gens(aug);
            std::vector<int> first(static_cast<size_t>(block.cols()));
            for (int i = 0; i < block.cols(); ++i) first[static_cast<size_t>(i)] = i;
            Mat cyc = k.gens.rows_subset(first).hcat(relM);
            Subquotient q = Subquotient::compute(cyc, relM);
            res.module.set_part(d, ModulePart::from_exponents(q.exponents(), N));
            res.zp_exact = src.free == 0;  // finite modules are exact
        }
    }
    return res;
}

MoravaModule MoravaModule::create(GradedModule module, GradedLinearMap psi_g,
                                  std::optional<GradedLinearMap> theta_G,
                                  std::vector<std::string> names) {
    MoravaModule m;
    m.module = std::move(module);
    m.psi_g = std::move(psi_g);
    m.theta_G = std::move(theta_G);
    m.generator_names = std::move(names);
    // The units act: psi_g must be invertible.
    for (auto& [d, b] : m.psi_g.blocks()) {
        if (b.rows() != b.cols()) throw error("MoravaModule: psi_g must preserve ranks");
        (void)inverse(b);  // throws non_unit_error if singular
    }
    if (m.theta_G) {
        GradedLinearMap lhs = m.theta_G->compose(m.psi_g);
        GradedLinearMap rhs = m.psi_g.compose(*m.theta_G);
        m.theta_commutes = lhs == rhs;
        if (!m.theta_commutes)
            m.notes.push_back("theta_G does not commute with psi_g at this precision; "
                              "theta-algebra constructions on this module are invalid");
    }
    return m;
}

int MoravaModule::rank() const {
    int r = 0;
    for (auto& [d, p] : module.parts()) r += p.summand_count();
    return r;
}

bool MoravaModule::odd_free() const {
    for (auto& [d, p] : module.parts()) {
        if (p.is_trivial()) continue;
        if (((d % 2) + 2) % 2 == 0) return false;
        if (!p.torsion.empty()) return false;
    }
    return true;
}

GradedLinearMap psi_for(const MoravaModule& m, int64_t k) {
    const PadicContext& ctx = m.module.ctx();
    int64_t e = ctx.discrete_log(k);  // throws non_unit_error for non-units
    return m.psi_g.pow(e);
}

}  // namespace thetak

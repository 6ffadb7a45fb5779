#include "thetak/complex.hpp"

#include <algorithm>
#include <set>

namespace thetak {

ChainComplex::ChainComplex(const PadicContext& ctx, int lo, int hi,
                           std::vector<std::vector<BasisLabel>> basis, std::vector<Mat> diffs)
    : ctx_(&ctx), lo_(lo), hi_(hi), basis_(std::move(basis)), d_(std::move(diffs)) {
    if (hi_ < lo_) throw error("ChainComplex: empty range");
    if (static_cast<int>(basis_.size()) != hi_ - lo_ + 1)
        throw error("ChainComplex: one basis list per degree required");
    if (static_cast<int>(d_.size()) != hi_ - lo_ + 1)
        throw error("ChainComplex: one differential per degree required");
    for (int n = lo_; n <= hi_; ++n) {
        const Mat& dn = d_[static_cast<size_t>(n - lo_)];
        int target = n - 1 >= lo_ ? dim(n - 1) : 0;
        if (dn.cols() != dim(n) || dn.rows() != target)
            throw error("ChainComplex: differential shape mismatch at degree " + std::to_string(n));
        // Internal degree preservation.
        if (n - 1 >= lo_) {
            for (int i = 0; i < dn.rows(); ++i)
                for (int j = 0; j < dn.cols(); ++j)
                    if (dn.at(i, j) != 0 &&
                        basis_[static_cast<size_t>(n - 1 - lo_)][static_cast<size_t>(i)].degree !=
                            basis_[static_cast<size_t>(n - lo_)][static_cast<size_t>(j)].degree)
                        throw error("ChainComplex: differential does not preserve internal degree");
        }
    }
    for (int n = lo_ + 2; n <= hi_; ++n)
        if (!(d(n - 1) * d(n)).is_zero())
            throw error("ChainComplex: d o d != 0 at degree " + std::to_string(n));
}

int ChainComplex::dim(int n) const {
    if (n < lo_ || n > hi_) return 0;
    return static_cast<int>(basis_[static_cast<size_t>(n - lo_)].size());
}

const std::vector<BasisLabel>& ChainComplex::basis(int n) const {
    static const std::vector<BasisLabel> empty;
    if (n < lo_ || n > hi_) return empty;
    return basis_[static_cast<size_t>(n - lo_)];
}

Mat ChainComplex::d(int n) const {
    if (n <= lo_ || n > hi_) return Mat(*ctx_, dim(n - 1), dim(n));
    return d_[static_cast<size_t>(n - lo_)];
}

GradedModule ChainComplex::homology(int n) const {
    GradedModule out(*ctx_);
    if (n < lo_ || n > hi_) return out;
    std::set<int> degrees;
    for (auto& b : basis(n)) degrees.insert(b.degree);
    for (int deg : degrees) {
        std::vector<int> idx_n, idx_lo, idx_hi;
        for (int i = 0; i < dim(n); ++i)
            if (basis(n)[static_cast<size_t>(i)].degree == deg) idx_n.push_back(i);
        for (int i = 0; i < dim(n - 1); ++i)
            if (basis(n - 1)[static_cast<size_t>(i)].degree == deg) idx_lo.push_back(i);
        for (int i = 0; i < dim(n + 1); ++i)
            if (basis(n + 1)[static_cast<size_t>(i)].degree == deg) idx_hi.push_back(i);
        Mat g = d(n).rows_subset(idx_lo).cols_subset(idx_n);
        Mat f = d(n + 1).rows_subset(idx_n).cols_subset(idx_hi);
        Subquotient h = homology_pair(f, g);
        out.set_part(deg, ModulePart::from_exponents(h.exponents(), ctx_->precision()));
    }
    return out;
}

Subquotient ChainComplex::homology_sub(int n) const {
    return homology_pair(d(n + 1), d(n));
}

SimplicialModule::SimplicialModule(const PadicContext& ctx,
                                   std::vector<std::vector<BasisLabel>> levels,
                                   std::vector<std::vector<Mat>> faces,
                                   std::vector<std::vector<Mat>> degens)
    : ctx_(&ctx), levels_(std::move(levels)), faces_(std::move(faces)), degens_(std::move(degens)) {
    int top_s = top();
    if (static_cast<int>(faces_.size()) != top_s + 1 ||
        static_cast<int>(degens_.size()) != top_s + 1)
        throw error("SimplicialModule: face/degeneracy tables malformed");
    for (int s = 1; s <= top_s; ++s)
        if (static_cast<int>(faces_[static_cast<size_t>(s)].size()) != s + 1)
            throw error("SimplicialModule: level " + std::to_string(s) + " needs s+1 faces");
    for (int s = 0; s < top_s; ++s)
        if (static_cast<int>(degens_[static_cast<size_t>(s)].size()) != s + 1)
            throw error("SimplicialModule: level " + std::to_string(s) + " needs s+1 degeneracies");

    // Simplicial identities on the available range.
    for (int s = 2; s <= top_s; ++s)
        for (int i = 0; i <= s - 1; ++i)
            for (int j = i + 1; j <= s; ++j)
                if (!(face(s - 1, i) * face(s, j) == face(s - 1, j - 1) * face(s, i)))
                    throw error("SimplicialModule: face identity fails");
    for (int s = 0; s + 1 < top_s; ++s)
        for (int i = 0; i <= s; ++i)
            for (int j = i; j <= s; ++j)
                if (!(degen(s + 1, j + 1) * degen(s, i) == degen(s + 1, i) * degen(s, j)))
                    throw error("SimplicialModule: degeneracy identity fails");
    for (int s = 1; s <= top_s; ++s)
        for (int i = 0; i <= s; ++i)
            for (int j = 0; j + 1 <= s; ++j) {
                Mat lhs = face(s, i) * degen(s - 1, j);
                Mat expect(*ctx_, dim(s - 1), dim(s - 1));
                if (i == j || i == j + 1)
                    expect = Mat::identity(*ctx_, dim(s - 1));
                else if (i < j)
                    expect = degen(s - 2 >= 0 ? s - 2 : 0, j - 1) * face(s - 1, i);
                else
                    expect = degen(s - 2 >= 0 ? s - 2 : 0, j) * face(s - 1, i - 1);
                if (!(lhs == expect)) throw error("SimplicialModule: mixed identity fails");
            }
}

ChainComplex SimplicialModule::moore_complex() const {
    std::vector<Mat> diffs;
    std::vector<std::vector<BasisLabel>> basis = levels_;
    for (int s = 0; s <= top(); ++s) {
        if (s == 0) {
            diffs.emplace_back(*ctx_, 0, dim(0));
            continue;
        }
        Mat d(*ctx_, dim(s - 1), dim(s));
        for (int i = 0; i <= s; ++i) {
            Mat f = face(s, i);
            d = (i % 2 == 0) ? d + f : d - f;
        }
        diffs.push_back(d);
    }
    return ChainComplex(*ctx_, 0, top(), basis, diffs);
}

NormalizedChains normalized_chains(const SimplicialModule& q) {
    const PadicContext& ctx = q.ctx();
    NormalizedChains out;
    std::vector<std::vector<BasisLabel>> basis;
    std::vector<Mat> diffs;
    std::vector<Mat> proj, sect;
    // Level 0 is untouched.
    for (int s = 0; s <= q.top(); ++s) {
        int n = q.dim(s);
        // Span of all degeneracy images into level s.
        std::vector<Mat> cols;
        Mat dspan(ctx, n, 0);
        if (s >= 1)
            for (int i = 0; i <= s - 1; ++i) dspan = dspan.hcat(q.degen(s - 1, i));
        // Unit-pivot column echelon; degenerate spans split off freely.
        std::vector<int> pivot_rows;
        Mat e = dspan;
        std::vector<std::pair<int, Mat>> echelon;  // (pivot row, column)
        for (int c = 0; c < e.cols(); ++c) {
            Mat v = e.col(c);
            for (auto& [pr, pc] : echelon) {
                int64_t f = v.at(pr, 0);
                if (f != 0)
                    for (int r = 0; r < n; ++r)
                        v.at(r, 0) = ctx.sub(v.at(r, 0), ctx.mul(f, pc.at(r, 0)));
            }
            int pr = -1;
            for (int r = 0; r < n; ++r)
                if (ctx.valuation(v.at(r, 0)) == 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) {
                if (!v.is_zero())
                    throw error("normalized_chains: degenerate span is not a free summand");
                continue;
            }
            Mat nv = v.scaled(ctx.inv(v.at(pr, 0)));
            echelon.emplace_back(pr, nv);
            pivot_rows.push_back(pr);
        }
        std::sort(pivot_rows.begin(), pivot_rows.end());
        std::vector<int> keep;
        for (int r = 0; r < n; ++r)
            if (!std::binary_search(pivot_rows.begin(), pivot_rows.end(), r)) keep.push_back(r);
        // Projection: reduce by echelon columns, then read surviving rows.
        Mat p(ctx, static_cast<int>(keep.size()), n);
        for (int c = 0; c < n; ++c) {
            Mat v(ctx, n, 1);
            v.at(c, 0) = 1;
            for (auto& [pr, pc] : echelon) {
                int64_t f = v.at(pr, 0);
                if (f != 0)
                    for (int r = 0; r < n; ++r)
                        v.at(r, 0) = ctx.sub(v.at(r, 0), ctx.mul(f, pc.at(r, 0)));
            }
            for (size_t k = 0; k < keep.size(); ++k)
                p.at(static_cast<int>(k), c) = v.at(keep[k], 0);
        }
        Mat sec(ctx, n, static_cast<int>(keep.size()));
        for (size_t k = 0; k < keep.size(); ++k) sec.at(keep[k], static_cast<int>(k)) = 1;
        proj.push_back(p);
        sect.push_back(sec);
        std::vector<BasisLabel> lbl;
        for (int r : keep) lbl.push_back(q.level(s)[static_cast<size_t>(r)]);
        basis.push_back(lbl);
    }
    ChainComplex moore = q.moore_complex();
    for (int s = 0; s <= q.top(); ++s) {
        if (s == 0) {
            diffs.emplace_back(ctx, 0, static_cast<int>(basis[0].size()));
            continue;
        }
        diffs.push_back(proj[static_cast<size_t>(s - 1)] * moore.d(s) * sect[static_cast<size_t>(s)]);
    }
    out.complex = ChainComplex(ctx, 0, q.top(), basis, diffs);
    out.projection = proj;
    out.section = sect;
    return out;
}

}  // namespace thetak

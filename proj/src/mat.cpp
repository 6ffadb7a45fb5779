#include "thetak/mat.hpp"

#include <algorithm>
#include <cassert>

namespace thetak {

Mat::Mat(const PadicContext& ctx, int rows, int cols)
    : rows_(rows), cols_(cols), ctx_(&ctx), prec_(ctx.precision()),
      a_(static_cast<size_t>(rows) * cols, 0) {
    if (static_cast<size_t>(rows) * cols > size_t(16) * 1024 * 1024)
        throw size_guard_error("Mat: dimension guard exceeded");
}

Mat::Mat(const PadicContext& ctx, const std::vector<std::vector<int64_t>>& entries)
    : Mat(ctx, static_cast<int>(entries.size()),
          entries.empty() ? 0 : static_cast<int>(entries[0].size())) {
    for (int r = 0; r < rows_; ++r) {
        if (static_cast<int>(entries[r].size()) != cols_) throw error("Mat: ragged rows");
        for (int c = 0; c < cols_; ++c) set(r, c, entries[r][c]);
    }
}

Mat Mat::identity(const PadicContext& ctx, int n) {
    Mat m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % ctx.modulus();
    return m;
}

bool Mat::is_zero() const {
    for (int64_t v : a_)
        if (v != 0) return false;
    return true;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw error("Mat: dimension mismatch in product");
    Mat r(*ctx_, rows_, o.cols_);
    r.prec_ = std::min(prec_, o.prec_);
    int64_t mod = ctx_->modulus();
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            int64_t aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = (r.at(i, j) + aik * o.at(k, j)) % mod;
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("Mat: dimension mismatch");
    Mat r(*ctx_, rows_, cols_);
    r.prec_ = std::min(prec_, o.prec_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ctx_->add(a_[i], o.a_[i]);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("Mat: dimension mismatch");
    Mat r(*ctx_, rows_, cols_);
    r.prec_ = std::min(prec_, o.prec_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ctx_->sub(a_[i], o.a_[i]);
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Mat::equals_mod(const Mat& o, int k) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    int64_t q = ctx_->p_pow(std::min({k, prec_, o.prec_}));
    if (q <= 1) return true;
    for (size_t i = 0; i < a_.size(); ++i)
        if (ctx_->sub(a_[i], o.a_[i]) % q != 0) return false;
    return true;
}

Mat Mat::transpose() const {
    Mat r(*ctx_, cols_, rows_);
    r.prec_ = prec_;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::col(int c) const {
    Mat r(*ctx_, rows_, 1);
    r.prec_ = prec_;
    for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, c);
    return r;
}

Mat Mat::cols_subset(const std::vector<int>& idx) const {
    Mat r(*ctx_, rows_, static_cast<int>(idx.size()));
    r.prec_ = prec_;
    for (int j = 0; j < r.cols(); ++j)
        for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[static_cast<size_t>(j)]);
    return r;
}

Mat Mat::rows_subset(const std::vector<int>& idx) const {
    Mat r(*ctx_, static_cast<int>(idx.size()), cols_);
    r.prec_ = prec_;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(idx[static_cast<size_t>(i)], j);
    return r;
}

Mat Mat::hcat(const Mat& o) const {
    if (cols_ == 0 && rows_ == 0) return o;
    if (o.cols_ == 0 && o.rows_ == 0) return *this;
    if (rows_ != o.rows_) throw error("Mat: hcat row mismatch");
    Mat r(*ctx_, rows_, cols_ + o.cols_);
    r.prec_ = std::min(prec_, o.prec_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

Mat Mat::scaled(int64_t s) const {
    Mat r = *this;
    for (auto& v : r.a_) v = ctx_->mul(v, ctx_->reduce(s));
    return r;
}

Mat Mat::pow(int64_t e) const {
    if (rows_ != cols_) throw error("Mat: pow needs a square matrix");
    Mat r = identity(*ctx_, rows_);
    Mat base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::vector<std::vector<int64_t>> Mat::to_rows() const {
    std::vector<std::vector<int64_t>> out(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        out[static_cast<size_t>(i)].resize(static_cast<size_t>(cols_));
        for (int j = 0; j < cols_; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = at(i, j);
    }
    return out;
}

namespace {

struct SnfWork {
    const PadicContext* ctx;
    Mat A, U, V, Uinv, Vinv;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < A.cols(); ++c) std::swap(A.at(i, c), A.at(j, c));
        for (int c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
        for (int r = 0; r < Uinv.rows(); ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < A.rows(); ++r) std::swap(A.at(r, i), A.at(r, j));
        for (int r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
        for (int c = 0; c < Vinv.cols(); ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }
    // row_i += q * row_j on A and U; inverse op on Uinv columns.
    void add_row(int i, int j, int64_t q) {
        if (q == 0) return;
        int64_t mod = ctx->modulus();
        for (int c = 0; c < A.cols(); ++c)
            A.at(i, c) = (A.at(i, c) + q * A.at(j, c)) % mod;
        for (int c = 0; c < U.cols(); ++c)
            U.at(i, c) = (U.at(i, c) + q * U.at(j, c)) % mod;
        int64_t nq = ctx->neg(q);
        for (int r = 0; r < Uinv.rows(); ++r)
            Uinv.at(r, j) = (Uinv.at(r, j) + nq * Uinv.at(r, i)) % mod;
    }
    void add_col(int i, int j, int64_t q) {
        if (q == 0) return;
        int64_t mod = ctx->modulus();
        for (int r = 0; r < A.rows(); ++r)
            A.at(r, i) = (A.at(r, i) + q * A.at(r, j)) % mod;
        for (int r = 0; r < V.rows(); ++r)
            V.at(r, i) = (V.at(r, i) + q * V.at(r, j)) % mod;
        int64_t nq = ctx->neg(q);
        for (int c = 0; c < Vinv.cols(); ++c)
            Vinv.at(j, c) = (Vinv.at(j, c) + nq * Vinv.at(i, c)) % mod;
    }
    // row_i *= u (unit) on A and U; Uinv column i divided by u.
    void scale_row(int i, int64_t u) {
        int64_t mod = ctx->modulus();
        int64_t uinv = ctx->inv(u);
        for (int c = 0; c < A.cols(); ++c) A.at(i, c) = (A.at(i, c) * u) % mod;
        for (int c = 0; c < U.cols(); ++c) U.at(i, c) = (U.at(i, c) * u) % mod;
        for (int r = 0; r < Uinv.rows(); ++r) Uinv.at(r, i) = (Uinv.at(r, i) * uinv) % mod;
    }
};

}  // namespace

SmithForm smith_normal_form(const Mat& m) {
    const PadicContext& ctx = m.ctx();
    int N = ctx.precision();
    SnfWork w{&ctx, m, Mat::identity(ctx, m.rows()), Mat::identity(ctx, m.cols()),
              Mat::identity(ctx, m.rows()), Mat::identity(ctx, m.cols())};
    int n = std::min(m.rows(), m.cols());
    std::vector<int> exps;
    for (int k = 0; k < n; ++k) {
        // Pivot: minimal valuation in the remaining block.
        int piv_r = -1, piv_c = -1, piv_v = N + 1;
        for (int i = k; i < m.rows(); ++i)
            for (int j = k; j < m.cols(); ++j) {
                int v = ctx.valuation(w.A.at(i, j));
                if (v < piv_v) piv_v = v, piv_r = i, piv_c = j;
            }
        if (piv_v >= N) {
            // Remaining block is zero at this precision.
            for (int r = k; r < n; ++r) exps.push_back(N);
            break;
        }
        w.swap_rows(k, piv_r);
        w.swap_cols(k, piv_c);
        int64_t unit = w.A.at(k, k) / ctx.p_pow(piv_v);
        w.scale_row(k, ctx.inv(unit));  // pivot becomes exactly p^piv_v
        for (int i = k + 1; i < m.rows(); ++i) {
            int64_t e = w.A.at(i, k);
            if (e == 0) continue;
            int64_t q = ctx.neg(e / ctx.p_pow(piv_v));
            w.add_row(i, k, q);
        }
        for (int j = k + 1; j < m.cols(); ++j) {
            int64_t e = w.A.at(k, j);
            if (e == 0) continue;
            int64_t q = ctx.neg(e / ctx.p_pow(piv_v));
            w.add_col(j, k, q);
        }
        exps.push_back(piv_v);
    }
    SmithForm out{w.U, w.A, w.V, w.Uinv, w.Vinv, exps};
    return out;
}

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw error("inverse: square matrix required");
    const PadicContext& ctx = m.ctx();
    Mat a = m, inv = Mat::identity(ctx, m.rows());
    int64_t mod = ctx.modulus();
    int n = m.rows();
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (ctx.valuation(a.at(i, k)) == 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw non_unit_error("inverse: matrix is not invertible mod p^N");
        for (int c = 0; c < n; ++c) {
            std::swap(a.at(k, c), a.at(piv, c));
            std::swap(inv.at(k, c), inv.at(piv, c));
        }
        int64_t s = ctx.inv(a.at(k, k));
        for (int c = 0; c < n; ++c) {
            a.at(k, c) = (a.at(k, c) * s) % mod;
            inv.at(k, c) = (inv.at(k, c) * s) % mod;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            int64_t f = ctx.neg(a.at(i, k));
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) {
                a.at(i, c) = (a.at(i, c) + f * a.at(k, c)) % mod;
                inv.at(i, c) = (inv.at(i, c) + f * inv.at(k, c)) % mod;
            }
        }
    }
    return inv;
}

PadicScalar determinant(const Mat& m) {
    if (m.rows() != m.cols()) throw error("determinant: square matrix required");
    const PadicContext& ctx = m.ctx();
    SmithForm s = smith_normal_form(m);
    // det(U) det(A) det(V) = det(D) = p^{sum e_i}; det(U), det(V) are units.
    int64_t d = 1 % ctx.modulus();
    for (int e : s.exponents) {
        if (e >= ctx.precision()) return PadicScalar(ctx, 0, m.prec());
        d = ctx.mul(d, ctx.p_pow(e));
    }
    // Unit factor: det of U^-1 and V^-1 via triangular elimination on copies.
    auto unit_det = [&ctx](Mat a) {
        int n = a.rows();
        int64_t det = 1 % ctx.modulus();
        for (int k = 0; k < n; ++k) {
            int piv = -1;
            for (int i = k; i < n; ++i)
                if (ctx.valuation(a.at(i, k)) == 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) throw non_unit_error("determinant: non-unimodular transform");
            if (piv != k) {
                for (int c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(piv, c));
                det = ctx.neg(det);
            }
            det = ctx.mul(det, a.at(k, k));
            int64_t s2 = ctx.inv(a.at(k, k));
            for (int i = k + 1; i < n; ++i) {
                int64_t f = ctx.neg(ctx.mul(a.at(i, k), s2));
                if (f == 0) continue;
                for (int c = k; c < n; ++c)
                    a.at(i, c) = ctx.add(a.at(i, c), ctx.mul(f, a.at(k, c)));
            }
        }
        return det;
    };
    int64_t u = ctx.mul(unit_det(s.Uinv), unit_det(s.Vinv));
    return PadicScalar(ctx, ctx.mul(d, u), m.prec());
}

KernelGens kernel_gens(const Mat& a) {
    const PadicContext& ctx = a.ctx();
    int N = ctx.precision();
    SmithForm s = smith_normal_form(a);
    std::vector<int> ann;
    int n = std::min(a.rows(), a.cols());
    std::vector<Mat> pieces;
    for (int j = 0; j < a.cols(); ++j) {
        int e = j < n ? s.exponents[static_cast<size_t>(j)] : N;
        if (e == 0) continue;  // unit pivot: no kernel contribution
        // A * (p^{N-e} V_j) = p^{N-e} U^{-1} D e_j = p^N (...) = 0.
        Mat g = s.V.col(j).scaled(ctx.p_pow(N - e));
        pieces.push_back(g);
        ann.push_back(e);
    }
    Mat out(ctx, a.cols(), static_cast<int>(pieces.size()));
    for (int j = 0; j < out.cols(); ++j)
        for (int i = 0; i < a.cols(); ++i) out.at(i, j) = pieces[static_cast<size_t>(j)].at(i, 0);
    return KernelGens{out, ann};
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw error("solve: row mismatch");
    const PadicContext& ctx = a.ctx();
    int N = ctx.precision();
    SmithForm s = smith_normal_form(a);
    Mat ub = s.U * b;
    Mat y(ctx, a.cols(), b.cols());
    int n = std::min(a.rows(), a.cols());
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) {
            int e = i < n ? s.exponents[static_cast<size_t>(i)] : N;
            int64_t rhs = ub.at(i, j);
            if (e >= N) {
                if (rhs != 0) return std::nullopt;
                continue;  // free coordinate; choose 0
            }
            if (ctx.valuation(rhs) < e) return std::nullopt;
            y.at(i, j) = rhs / ctx.p_pow(e);
        }
    }
    return s.V * y;
}

Subquotient Subquotient::compute(const Mat& u, const Mat& v) {
    const PadicContext& ctx = u.ctx();
    int N = ctx.precision();
    Subquotient q;
    q.u_ = u;
    if (u.cols() == 0) {
        q.uprime_ = Mat(ctx, 0, 0);
        return q;
    }
    // Relations among the columns of U (full kernel, so p^N-truncation
    // relations are included), plus the expression of V in U-coordinates.
    KernelGens rel = kernel_gens(u);
    Mat x(ctx, u.cols(), 0);
    if (v.cols() > 0) {
        auto sol = solve(u, v);
        if (!sol) throw error("Subquotient: denominator does not lie in the numerator span");
        x = *sol;
    }
    Mat relmat = x.hcat(rel.gens);
    SmithForm s = relmat.cols() > 0 ? smith_normal_form(relmat)
                                    : SmithForm{Mat::identity(ctx, u.cols()), Mat(ctx, u.cols(), 0),
                                                Mat(ctx, 0, 0), Mat::identity(ctx, u.cols()),
                                                Mat(ctx, 0, 0), {}};
    q.uprime_ = s.U;
    int n = std::min(relmat.rows(), relmat.cols());
    for (int i = 0; i < u.cols(); ++i) {
        int e = i < n ? s.exponents[static_cast<size_t>(i)] : N;
        if (e == 0) continue;  // dead generator
        q.keep_.push_back(i);
        q.exponents_.push_back(e);
    }
    return q;
}

Mat Subquotient::representative(int i) const {
    const PadicContext& c = ctx();
    Mat e(c, u_.cols(), 1);
    e.at(keep_[static_cast<size_t>(i)], 0) = 1;
    // uprime maps generator coords to canonical coords; invert for the lift.
    Mat lift = inverse(uprime_) * e;
    return u_ * lift;
}

std::vector<int64_t> Subquotient::coordinates(const Mat& ambient_vec) const {
    const PadicContext& c = ctx();
    if (exponents_.empty()) return {};
    auto x = solve(u_, ambient_vec);
    if (!x) throw error("Subquotient: vector not in numerator span");
    Mat y = uprime_ * *x;
    std::vector<int64_t> out;
    out.reserve(exponents_.size());
    for (size_t i = 0; i < keep_.size(); ++i) {
        int64_t coord = y.at(keep_[i], 0) % c.p_pow(exponents_[i]);
        out.push_back(coord);
    }
    return out;
}

Subquotient homology_pair(const Mat& f, const Mat& g) {
    if (!(g * f).is_zero()) throw error("homology_pair: g o f != 0");
    KernelGens z = kernel_gens(g);
    return Subquotient::compute(z.gens, f);
}

Subquotient homology_presented(const Mat& f, const Mat& rel1, const Mat& rel2,
                               const Mat& g, const Mat& rel3) {
    (void)rel1;
    const PadicContext& ctx = f.ctx();
    int k2 = g.cols();
    // Cycles: x in R^{k2} with g(x) in span(rel3): kernel of [g | rel3]
    // projected to the first block.
    Mat aug = g.hcat(rel3);
    KernelGens k = kernel_gens(aug);
    std::vector<int> first(static_cast<size_t>(k2));
    for (int i = 0; i < k2; ++i) first[static_cast<size_t>(i)] = i;
    Mat cycles = k.gens.rows_subset(first).hcat(rel2);
    Mat boundaries = f.hcat(rel2);
    (void)ctx;
    return Subquotient::compute(cycles, boundaries);
}

}  // namespace thetak

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "thetak/padic.hpp"

namespace thetak {

/**
 * Dense matrix over Z/p^N with a uniform effective-precision tag.
 * The interpretation throughout is "integer matrix known mod p^prec";
 * entries are stored as canonical residues in [0, p^N).
 */
class Mat {
  public:
    Mat() : rows_(0), cols_(0), ctx_(nullptr), prec_(0) {}
    Mat(const PadicContext& ctx, int rows, int cols);
    Mat(const PadicContext& ctx, const std::vector<std::vector<int64_t>>& entries);

    static Mat identity(const PadicContext& ctx, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const PadicContext& ctx() const { return *ctx_; }
    int prec() const { return prec_; }
    void set_prec(int p) { prec_ = p; }

    int64_t& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    int64_t at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, int64_t v) { at(r, c) = ctx_->reduce(v); }

    bool is_zero() const;
    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    bool operator==(const Mat& o) const;
    bool equals_mod(const Mat& o, int k) const;

    Mat transpose() const;
    Mat col(int c) const;
    Mat cols_subset(const std::vector<int>& idx) const;
    Mat rows_subset(const std::vector<int>& idx) const;
    // Horizontal concatenation [*this | o]; either side may be empty.
    Mat hcat(const Mat& o) const;
    Mat scaled(int64_t s) const;
    Mat pow(int64_t e) const;  // square matrices

    std::vector<std::vector<int64_t>> to_rows() const;

  private:
    int rows_, cols_;
    const PadicContext* ctx_;
    int prec_;
    std::vector<int64_t> a_;
};

/**
 * Smith normal form over the local ring Z/p^N: U * A * V = D with U, V
 * invertible and D diagonal with entries p^{e_1} | p^{e_2} | ... (unit parts
 * normalized away, so every diagonal entry is literally a power of p; a zero
 * residue is recorded with exponent N).
 */
struct SmithForm {
    Mat U, D, V;
    Mat Uinv, Vinv;
    std::vector<int> exponents;  // e_i = v(D[i][i]) for i < min(rows, cols)
    int rank() const {
        int r = 0;
        for (int e : exponents)
            if (e < D.ctx().precision()) ++r;
        return r;
    }
};

SmithForm smith_normal_form(const Mat& m);

// Inverse of an invertible matrix over Z/p^N (unit-pivot Gauss-Jordan).
Mat inverse(const Mat& m);
// Determinant via elimination; throws if the matrix is not square.
PadicScalar determinant(const Mat& m);

/**
 * Generators of the full kernel of A : R^cols -> R^rows over R = Z/p^N,
 * including the torsion pieces p^{N-e} * v coming from diagonal entries of
 * positive valuation. `annihilator[i]` is the exponent a with p^a * gen_i = 0.
 */
struct KernelGens {
    Mat gens;                      // ambient columns, one per generator
    std::vector<int> annihilator;  // p^a kills the generator
};
KernelGens kernel_gens(const Mat& a);

// Particular solution of A X = B over Z/p^N, or nullopt if none exists.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/**
 * Canonical form of the subquotient span(U)/span(V) inside R^m, where the
 * columns of V must lie in the span of U's columns. Records enough of the
 * change of basis to convert ambient vectors to coordinates and back, which
 * is what lets induced maps between subquotients be computed.
 */
class Subquotient {
  public:
    Subquotient() = default;
    static Subquotient compute(const Mat& u, const Mat& v);

    // Invariant-factor exponents of the canonical cyclic summands, each in
    // [1, N]; exponent N is a summand free at this precision. Sorted.
    const std::vector<int>& exponents() const { return exponents_; }
    int count() const { return static_cast<int>(exponents_.size()); }
    bool is_trivial() const { return exponents_.empty(); }

    // Ambient representative of canonical generator i.
    Mat representative(int i) const;
    // Coordinates of an ambient vector lying in span(U): one residue per
    // canonical summand, reduced mod its annihilator.
    std::vector<int64_t> coordinates(const Mat& ambient_vec) const;

    const PadicContext& ctx() const { return u_.ctx(); }

  private:
    Mat u_;           // ambient x u generator matrix
    Mat uprime_;      // generator-space transform: coords y = uprime * x
    std::vector<int> keep_;       // indices of surviving generator coordinates
    std::vector<int> exponents_;  // annihilator exponents for kept coordinates
};

/**
 * Homology at the middle of  R^a --f--> R^b --g--> R^c  (g o f = 0), as a
 * subquotient of R^b. Also usable with presented modules by augmenting f and
 * g with relation columns; see homology_presented.
 */
Subquotient homology_pair(const Mat& f, const Mat& g);

/**
 * Homology of a two-step complex of *presented* modules
 *   P1 --f--> P2 --g--> P3,
 * each Pi = R^{k_i}/span(rel_i), with f, g matrices on the free covers.
 */
Subquotient homology_presented(const Mat& f, const Mat& rel1, const Mat& rel2,
                               const Mat& g, const Mat& rel3);

}  // namespace thetak

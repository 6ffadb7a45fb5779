#pragma once

#include <string>
#include <vector>

#include "thetak/graded_module.hpp"
#include "thetak/mat.hpp"

namespace thetak {

struct BasisLabel {
    std::string name;
    int degree = 0;      // internal Z-degree
    int filtration = 0;  // used by FilteredComplex

    int parity() const { return ((degree % 2) + 2) % 2; }
};

/**
 * Finite chain complex of based modules over Z/p^N. Degrees run lo..hi, with
 * d_n : C_n -> C_{n-1}; d o d = 0 is checked on construction. Differentials
 * must preserve the internal degree of the basis labels.
 */
class ChainComplex {
  public:
    ChainComplex() : ctx_(nullptr), lo_(0), hi_(-1) {}
    ChainComplex(const PadicContext& ctx, int lo, int hi,
                 std::vector<std::vector<BasisLabel>> basis, std::vector<Mat> diffs);

    const PadicContext& ctx() const { return *ctx_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int dim(int n) const;
    const std::vector<BasisLabel>& basis(int n) const;
    Mat d(int n) const;  // zero matrix outside (lo, hi]

    /// H_n as a graded module: split along internal degrees of the labels.
    GradedModule homology(int n) const;
    /// H_n as one subquotient of C_n (no degree split); cycles in columns.
    Subquotient homology_sub(int n) const;

  private:
    const PadicContext* ctx_;
    int lo_, hi_;
    std::vector<std::vector<BasisLabel>> basis_;  // index n - lo
    std::vector<Mat> d_;                          // d_[n - lo] : C_n -> C_{n-1}
};

/**
 * Simplicial module: levels Q_0..Q_top with face and degeneracy matrices.
 * The simplicial identities are certified on construction.
 */
class SimplicialModule {
  public:
    SimplicialModule() : ctx_(nullptr) {}
    SimplicialModule(const PadicContext& ctx, std::vector<std::vector<BasisLabel>> levels,
                     std::vector<std::vector<Mat>> faces, std::vector<std::vector<Mat>> degens);

    const PadicContext& ctx() const { return *ctx_; }
    int top() const { return static_cast<int>(levels_.size()) - 1; }
    int dim(int s) const { return static_cast<int>(levels_[static_cast<size_t>(s)].size()); }
    const std::vector<BasisLabel>& level(int s) const { return levels_[static_cast<size_t>(s)]; }
    const Mat& face(int s, int i) const { return faces_[static_cast<size_t>(s)][static_cast<size_t>(i)]; }
    const Mat& degen(int s, int i) const { return degens_[static_cast<size_t>(s)][static_cast<size_t>(i)]; }

    /// Unnormalized chain complex: C_s = Q_s, d = alternating face sum.
    ChainComplex moore_complex() const;

  private:
    const PadicContext* ctx_;
    std::vector<std::vector<BasisLabel>> levels_;
    std::vector<std::vector<Mat>> faces_;   // faces_[s][i], s >= 1
    std::vector<std::vector<Mat>> degens_;  // degens_[s][i] : Q_s -> Q_{s+1}
};

/**
 * Normalized chains: the quotient of each level by the span of the
 * degeneracies, with projection/section recorded. Degenerate spans are free
 * direct summands (degeneracies are split injections with unit pivots).
 */
struct NormalizedChains {
    ChainComplex complex;
    std::vector<Mat> projection;  // level s: Q_s -> N_s coordinates
    std::vector<Mat> section;     // N_s -> Q_s
};

NormalizedChains normalized_chains(const SimplicialModule& q);

}  // namespace thetak

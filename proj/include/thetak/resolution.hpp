#pragma once

#include <string>
#include <vector>

#include "thetak/complex.hpp"
#include "thetak/theta.hpp"

namespace thetak {

/**
 * A finite left module over a presented algebra: a based Z/p^N-module with a
 * left action matrix per algebra generator. The action matrices must satisfy
 * the algebra's relations (spot-checked on construction). Right actions are
 * derived with the Koszul sign m*a = (-1)^{|m||a|} a*m.
 */
class AlgebraModule {
  public:
    AlgebraModule() : alg_(nullptr) {}
    AlgebraModule(const ThetaAlgebra& alg, std::vector<BasisLabel> basis,
                  std::vector<Mat> gen_action, std::string name);

    /// Z_p with every generator acting by zero.
    static AlgebraModule augmentation(const ThetaAlgebra& alg);
    /// The algebra as a module over itself.
    static AlgebraModule regular(const ThetaAlgebra& alg);
    /// The target of an algebra map phi : A -> B, i.e. B with a acting as phi(a).
    static AlgebraModule via_map(const ThetaAlgebra& alg, const ThetaAlgebra& target,
                                 const std::vector<AlgebraElement>& gen_images,
                                 const std::string& name);

    const ThetaAlgebra& algebra() const { return *alg_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<BasisLabel>& basis() const { return basis_; }
    const std::string& name() const { return name_; }

    Mat left_action(const AlgebraElement& a) const;
    Mat right_action(const AlgebraElement& a) const;

  private:
    const ThetaAlgebra* alg_;
    std::vector<BasisLabel> basis_;
    std::vector<Mat> gen_action_;
    std::string name_;

    Mat left_action_mono(const Monomial& m) const;
};

/// Matrix of left/right multiplication by a on the algebra's monomial basis.
Mat left_mult_matrix(const AlgebraPresentation& pres, const AlgebraElement& a);
Mat right_mult_matrix(const AlgebraPresentation& pres, const AlgebraElement& a);

/**
 * Free resolution ... -> A^{r_2} -> A^{r_1} -> A^{r_0} -> M -> 0 built by
 * iterated kernel computation on monomial bases with minimal generator
 * selection by mod-p pivoting (graded Nakayama).
 */
struct FreeResolution {
    const ThetaAlgebra* alg = nullptr;
    int length = 0;
    std::vector<int> ranks;
    std::vector<std::vector<BasisLabel>> gen_labels;          // per F_i, one per column
    std::vector<std::vector<std::vector<AlgebraElement>>> d;  // d[i][row][col] : F_i -> F_{i-1}
    std::vector<Mat> aug;  // underlying-coordinates images of F_0 generators in M

    // Underlying Z/p^N data of F_i (basis: monomial x generator).
    std::vector<BasisLabel> underlying_basis(int i) const;
    Mat underlying_d(int i) const;
    ChainComplex underlying_complex() const;
};

FreeResolution free_resolution(const ThetaAlgebra& alg, const AlgebraModule& m, int length);

/// Certificate that the resolution is exact in 0 < i < length and resolves M.
bool verify_resolution(const FreeResolution& f, const AlgebraModule& m, std::string* why = nullptr);

/// The complex M (x)_A F_*, with labels, ready for homology.
ChainComplex tensor_with_resolution(const AlgebraModule& m, const FreeResolution& f);

/// Tor_i^A(M, N) for 0 <= i <= max_i, bigraded via internal degrees.
std::vector<GradedModule> tor(const ThetaAlgebra& alg, const AlgebraModule& m,
                              const AlgebraModule& n, int max_i);

struct CompletedTorResult {
    std::vector<GradedModule> groups;
    bool inside_lemma_hypotheses;  // free underlying modules (always true here)
    std::string note;
};

/// Completed Tor: L0 applied to the resolution before homology. On the
/// finitely presented class L0 is the identity, so this agrees with tor;
/// the agreement is asserted.
CompletedTorResult completed_tor(const ThetaAlgebra& alg, const AlgebraModule& m,
                                 const AlgebraModule& n, int max_i);

/// Coequalizer of M (x) A (x) N => M (x) N (right and left action).
GradedModule relative_tensor(const AlgebraModule& m, const ThetaAlgebra& alg,
                             const AlgebraModule& n);

/// Standard bar object: level s = M (x) A^{(x)s} (x) N, faces by
/// multiplication/action, degeneracies by unit insertion.
SimplicialModule bar_construction(const ThetaAlgebra& alg, const AlgebraModule& m,
                                  const AlgebraModule& n, int s_max);

}  // namespace thetak

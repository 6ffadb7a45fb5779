#pragma once

#include <string>
#include <vector>

#include "thetak/theta.hpp"

namespace thetak {

/**
 * The relation map out of the depth-T free theta-algebra on (G, theta_G):
 * theta^t x_i  |->  theta^{t+1} x_i - sum_j lambda_{ij} theta^t x_j,
 * landing in the depth-(T+1) free theta-algebra so that no relation falls
 * off the truncation.
 */
struct RelationMapData {
    MoravaModule G;
    int depth = 0;  // T
    ThetaAlgebra source;  // Free_theta[G]_T
    ThetaAlgebra target;  // Free_theta[G]_{T+1}
    Mat lambda;           // theta_G assembled on the generator order (column convention)
    std::vector<AlgebraElement> images;  // one per source generator, in target
};

RelationMapData relation_map(const MoravaModule& G, int depth,
                             DepthMode mode = DepthMode::Strict);

/**
 * The change of basis from the proof of the flatness lemma: the relation
 * images alpha_{it} together with the layer-0 generators x_j form a new
 * exterior generator family; the transition matrix over the old generators
 * is unitriangular in layer order.
 */
struct AlphaBasis {
    int rank = 0;   // n = rank(G)
    int depth = 0;  // T: alphas at layers 0..T live in depth T+1
    std::vector<AlgebraElement> alpha;  // ordered (t, i)
    Mat transition;         // new over old, rows (x's, alpha_0.., alpha_T), cols layer-major
    Mat back_substitution;  // old over new (exact inverse)
    bool unitriangular = false;
    bool anticommute_ok = false;
    bool recovery_ok = false;  // transition * back = id
};

AlphaBasis alpha_basis(const MoravaModule& G, int depth);

/**
 * The projection from the target free theta-algebra onto Lambda[G]: rewrite
 * in the alpha coordinates (back-substitution through the unitriangular
 * transition) and delete every monomial containing an alpha.
 */
class QuotientMap {
  public:
    QuotientMap(const RelationMapData& data, const ThetaAlgebra& lambda_g);

    /// Image in Lambda[G] of an element of the target free theta-algebra.
    AlgebraElement apply(const AlgebraElement& target_elem) const;
    /// The alpha-coordinate rewrite without the deletion step.
    AlgebraElement rewrite(const AlgebraElement& target_elem) const;
    /// The exterior presentation on (x's, alphas).
    const AlgebraPresentation& alpha_presentation() const { return *newpres_; }

  private:
    PresPtr newpres_;
    PresPtr lambda_pres_;
    int rank_;
    std::vector<std::vector<AlgebraElement>> expr_;  // old generator (t, i) over new
};

struct QuotientCertificate {
    bool pass = false;
    bool rank_match = false;
    bool module_match = false;
    bool theta_match = false;
    bool psi_match = false;
    int quotient_rank = 0;
    GradedModule quotient_module;
    std::string witness;  // first mismatching bidegree on failure
};

/**
 * Quotient of the target free theta-algebra by the ideal generated by the
 * relation images, computed by deleting alpha-monomials in the alpha
 * coordinates, with a certificate that the result is Lambda[G] as a graded
 * module with matching theta and psi, in word length <= degree_budget.
 */
QuotientCertificate quotient_by_relations(const RelationMapData& data, int degree_budget = -1);

struct ZeroCertificate {
    bool pass = false;
    std::string witness;
};

/// The relation images evaluate to exactly zero in Lambda[G] under the
/// universal map theta^t x |-> theta_G^t(x).
ZeroCertificate composite_is_zero(const MoravaModule& G, int depth);

}  // namespace thetak

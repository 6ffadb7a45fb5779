#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thetak/algebra.hpp"
#include "thetak/morava.hpp"
#include "thetak/rng.hpp"

namespace thetak {

enum class DepthMode {
    Strict,          // theta past the top layer is a hard error
    TruncateToZero,  // theta past the top layer is 0; results marked truncated
};

/// Binomial coefficient C(k, j) of a p-adic residue k; the effective
/// precision drops by v_p(j!).
PadicScalar binom_residue(const PadicContext& ctx, int64_t k, int j);

/**
 * Presented graded-commutative algebra carrying theta^p and the Adams
 * operation psi^g on generators, with evaluation of both on arbitrary
 * elements via the theta-algebra axioms:
 *   - theta on odd elements is Z_p-linear,
 *   - theta on even sums uses the closed multinomial correction,
 *   - theta on products recurses through the mixed/odd product laws,
 *   - psi is multiplicative with the 1/k twist on products of odd pairs.
 *
 * Values and presentations are immutable; theta keeps a per-instance
 * memo of generator-monomial evaluations, so share copies rather than one
 * instance across threads.
 */
class ThetaAlgebra {
  public:
    ThetaAlgebra() = default;
    ThetaAlgebra(PresPtr pres, std::vector<std::optional<AlgebraElement>> theta_gen,
                 std::vector<AlgebraElement> psi_gen, std::optional<Mat> psi_matrix,
                 DepthMode mode);

    const AlgebraPresentation& pres() const { return *pres_; }
    const PadicContext& ctx() const { return pres_->ctx(); }
    DepthMode depth_mode() const { return mode_; }
    bool truncate_mode() const { return mode_ == DepthMode::TruncateToZero; }

    AlgebraElement theta_gen_image(int g) const;  // depth logic applied
    const std::vector<AlgebraElement>& psi_gen_images() const { return psi_gen_; }
    const std::optional<Mat>& psi_matrix() const { return psi_matrix_; }

    AlgebraElement theta(const AlgebraElement& e) const;
    AlgebraElement psi_g(const AlgebraElement& e) const;
    // psi^k for a unit residue k (discrete-log route on linear algebras,
    // binomial substitution on the truncated polynomial ring).
    AlgebraElement psi_unit(int64_t k, const AlgebraElement& e) const;
    // psi^k for a genuine positive integer k coprime to p: exact on the
    // truncated polynomial ring (integer binomials).
    AlgebraElement psi_int(int64_t k, const AlgebraElement& e) const;
    // psi^p(x) = x^p + p theta(x); not invertible.
    AlgebraElement psi_p(const AlgebraElement& e) const;

    AlgebraElement theta_scalar(const PadicScalar& c) const;

    // Fault injection for the axiom checker tests.
    void override_theta_gen(int g, AlgebraElement image);

    bool is_truncated_poly() const;
    int top_layer() const;  // max FreeThetaLayer layer, -1 if none

  private:
    PresPtr pres_;
    std::vector<std::optional<AlgebraElement>> theta_gen_;  // nullopt: beyond depth
    std::vector<AlgebraElement> psi_gen_;
    std::optional<Mat> psi_matrix_;  // set when psi is linear on generators
    DepthMode mode_ = DepthMode::Strict;
    mutable std::map<Monomial, AlgebraElement> theta_cache_;

    AlgebraElement theta_mono(const Monomial& m) const;
    AlgebraElement theta_term(const PadicScalar& c, const Monomial& m) const;
    AlgebraElement mono_pow_p(const Monomial& m) const;
    AlgebraElement psi_apply(const std::vector<AlgebraElement>& gen_images, int64_t twist_unit,
                             const AlgebraElement& e) const;
};

/// Exterior theta-algebra Lambda[G] on an odd, finitely generated free Morava
/// module with a theta endomorphism that commutes with the Adams action.
ThetaAlgebra exterior_theta_algebra(const MoravaModule& G);

/// Depth-truncated free theta-algebra: exterior on {theta^t x_i : 0 <= t <= T},
/// theta shifting layers, psi acting layerwise.
ThetaAlgebra free_theta_algebra(const MoravaModule& G, int depth,
                                DepthMode mode = DepthMode::Strict);

/// The truncated polynomial theta-ring Z_p[x]/(x^n) with
/// psi^k(x) = (1+x)^k - 1 and theta(x) = ((1+x)^p - 1 - x^p)/p.
ThetaAlgebra truncated_poly_theta_ring(const PadicContext& ctx, int n,
                                       const std::string& name = "x");

/// Algebra map determined on generators; products of images extend it.
struct ThetaAlgebraMap {
    const ThetaAlgebra* src = nullptr;
    const ThetaAlgebra* dst = nullptr;
    std::vector<AlgebraElement> gen_images;

    AlgebraElement apply(const AlgebraElement& e) const;
};

/**
 * The universal map out of a free theta-algebra: given images f(x_i) of the
 * layer-0 generators as odd elements of R, send theta^t x_i to theta_R^t(f(x_i)).
 */
ThetaAlgebraMap universal_map(const ThetaAlgebra& free_src,
                              const std::vector<AlgebraElement>& base_images,
                              const ThetaAlgebra& R);

/// Sample check that a map intertwines theta on elements with layer headroom.
bool verify_intertwines_theta(const ThetaAlgebraMap& map, int samples, uint64_t seed);

struct AxiomWitness {
    std::string axiom;
    std::string detail;
};

struct AxiomReport {
    bool pass = true;
    int samples = 0;
    int compare_precision = 0;
    std::map<std::string, bool> per_axiom;
    std::vector<AxiomWitness> failures;
};

/// Checks Def 2.11 conditions (i)-(v) on seeded random homogeneous samples,
/// all comparisons exact mod p^{N-2}.
AxiomReport check_theta_axioms(const ThetaAlgebra& R, int samples, uint64_t seed);

/// Random parity-homogeneous element supported on <= max_terms monomials.
AlgebraElement random_homogeneous(const ThetaAlgebra& R, Rng& rng, int parity, int max_terms,
                                  int max_layer = -1);

}  // namespace thetak

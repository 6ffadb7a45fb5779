#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetak/graded_module.hpp"
#include "thetak/mat.hpp"

namespace thetak {

/**
 * A graded linear map between GradedModules: one matrix block per occupied
 * source degree, sending degree d to degree d + shift. Columns are indexed by
 * the source part's generators (torsion ascending, then free — the canonical
 * ordering), rows by the target part's. Construction checks that relations
 * map into relations.
 */
class GradedLinearMap {
  public:
    GradedLinearMap() = default;
    GradedLinearMap(GradedModule dom, GradedModule cod, int degree_shift,
                    std::map<int, Mat> blocks);

    // Convenience: map between modules concentrated in single degrees.
    static GradedLinearMap single_block(const GradedModule& dom, const GradedModule& cod,
                                        int src_degree, int dst_degree, Mat block);
    static GradedLinearMap identity(const GradedModule& m);
    static GradedLinearMap zero(const GradedModule& dom, const GradedModule& cod,
                                int degree_shift);

    const GradedModule& domain() const { return dom_; }
    const GradedModule& codomain() const { return cod_; }
    int degree_shift() const { return shift_; }
    bool parity_preserving() const { return ((shift_ % 2) + 2) % 2 == 0; }
    const std::map<int, Mat>& blocks() const { return blocks_; }
    Mat block_or_zero(int src_degree) const;

    GradedLinearMap compose(const GradedLinearMap& inner) const;  // this o inner
    GradedLinearMap operator+(const GradedLinearMap& o) const;
    GradedLinearMap operator-(const GradedLinearMap& o) const;
    GradedLinearMap pow(int64_t e) const;  // endomorphisms only
    bool is_zero() const;
    bool equals_mod(const GradedLinearMap& o, int k) const;
    bool operator==(const GradedLinearMap& o) const;

  private:
    GradedModule dom_, cod_;
    int shift_ = 0;
    std::map<int, Mat> blocks_;
};

struct KernelResult {
    GradedModule module;
    bool precision_loss = false;  // pivot valuations at the precision ceiling
    bool zp_exact = true;         // false when only the Z/p^N answer is meaningful
};

/// Cokernel of a parity-preserving map, in canonical form.
GradedModule cokernel(const GradedLinearMap& f);
/// Kernel in the Z_p sense at working precision, with honesty flags.
KernelResult kernel(const GradedLinearMap& f);

/**
 * Morava module: a graded module with an invertible Adams operator psi^g for
 * the chosen topological generator g, and optionally a theta endomorphism.
 * Whether theta commutes with psi (Def of a Morava-module morphism) is
 * recorded rather than enforced; consumers that require a genuine theta-
 * algebra must check `theta_commutes`.
 */
struct MoravaModule {
    GradedModule module;
    GradedLinearMap psi_g;
    std::optional<GradedLinearMap> theta_G;
    std::vector<std::string> generator_names;
    bool theta_commutes = true;
    std::vector<std::string> notes;

    static MoravaModule create(GradedModule module, GradedLinearMap psi_g,
                               std::optional<GradedLinearMap> theta_G,
                               std::vector<std::string> names = {});

    int rank() const;
    bool odd_free() const;  // concentrated in odd degree, torsion-free
};

/// psi^k for a unit k, via the discrete logarithm base g: psi_g^{dlog_g k}.
GradedLinearMap psi_for(const MoravaModule& m, int64_t k);

}  // namespace thetak

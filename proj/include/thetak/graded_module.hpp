#pragma once

#include <map>
#include <string>
#include <vector>

#include "thetak/padic.hpp"

#include "json.hpp"

namespace thetak {

/**
 * One graded piece: a finitely presented Z_p-module at precision N, in
 * canonical form free^rank + sum of Z/p^e with the torsion exponents sorted
 * ascending, 1 <= e <= N. A cyclic summand whose annihilator sits at the
 * precision ceiling p^N is indistinguishable from a free summand and is
 * recorded as free.
 */
struct ModulePart {
    int free = 0;
    std::vector<int> torsion;  // ascending

    bool is_trivial() const { return free == 0 && torsion.empty(); }
    int summand_count() const { return free + static_cast<int>(torsion.size()); }
    bool operator==(const ModulePart& o) const { return free == o.free && torsion == o.torsion; }

    // Generator ordering convention everywhere: torsion ascending, then free.
    std::vector<int> exponents(int precision) const;
    static ModulePart from_exponents(const std::vector<int>& exps, int precision);

    std::string str(int64_t p) const;
};

/// Z-graded module over the p-adic scalars: a ModulePart per internal degree.
/// The main-text Z/2 view is the reduction of degrees mod 2.
class GradedModule {
  public:
    GradedModule() : ctx_(nullptr) {}
    explicit GradedModule(const PadicContext& ctx) : ctx_(&ctx) {}

    static GradedModule concentrated(const PadicContext& ctx, int degree, ModulePart part);
    static GradedModule free_module(const PadicContext& ctx, int degree, int rank);
    static GradedModule scalars(const PadicContext& ctx) { return free_module(ctx, 0, 1); }

    const PadicContext& ctx() const { return *ctx_; }
    const std::map<int, ModulePart>& parts() const { return parts_; }
    ModulePart& part(int degree) { return parts_[degree]; }
    ModulePart part_or_zero(int degree) const;
    void set_part(int degree, ModulePart p);

    bool is_trivial() const;
    bool operator==(const GradedModule& o) const;

    ModulePart even_part() const;  // sum over even internal degrees
    ModulePart odd_part() const;
    GradedModule reduce_z2() const;

    // Completed tensor product: on finitely presented modules L0 is the
    // identity, so this is the ordinary graded tensor (degrees add).
    GradedModule tensor(const GradedModule& o) const;
    GradedModule direct_sum(const GradedModule& o) const;

    // L0 and L1: finitely presented modules are derived p-complete.
    std::pair<GradedModule, GradedModule> derived_completion() const;

    nlohmann::ordered_json to_json() const;
    std::string str() const;

  private:
    const PadicContext* ctx_;
    std::map<int, ModulePart> parts_;

    void prune();
};

ModulePart tensor_parts(const ModulePart& a, const ModulePart& b, int precision);

}  // namespace thetak

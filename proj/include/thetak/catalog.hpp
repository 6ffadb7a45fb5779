#pragma once

#include <string>
#include <vector>

#include "thetak/morava.hpp"
#include "thetak/theta.hpp"

#include "json.hpp"

namespace thetak {

/**
 * The Morava module of an odd sphere S^{2n+1}: rank one in odd degree
 * -2n-1, theta_G = p^n. The Adams action on this module is a convention:
 * the configurable default is psi^k = k^{n+1}, from identifying the odd
 * class with the even Bott class two cells up.
 */
MoravaModule sphere_data(int n, const PadicContext& ctx, int psi_weight = -1);

/**
 * The Morava module of SU(n): rank n-1 on the classes x, x^2, ..., x^{n-1}
 * of the truncated polynomial ring Z_p[x]/(x^n). psi^g comes from
 * psi^k(x) = (1+x)^k - 1; the theta matrix takes the displayed formula on x
 * and derives the remaining columns inside the ring via the product law;
 * an optional Bott twist multiplies theta by p^{bott_twist}.
 */
MoravaModule su_data(int n, const PadicContext& ctx, int bott_twist = 0);

/// Validated fields of a custom algebra input file.
struct CustomSpace {
    int64_t p = 0;
    int precision = 0;
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<std::vector<int64_t>> theta;
    std::vector<std::vector<int64_t>> psi_g;
};

/// Parses {p, precision, generators:[{name, degree}], theta, psi_g}.
/// Throws std::runtime_error with a field path on malformed input.
CustomSpace parse_custom(const nlohmann::json& j);
MoravaModule custom_data(const CustomSpace& c, const PadicContext& ctx);

struct V1Report {
    GradedModule kernel;
    GradedModule cokernel;
    std::vector<int> smith_exponents;  // invariant factors of theta_G
    bool injective = false;
    bool precision_loss = false;
    bool theta_commutes = true;
    std::vector<std::string> notes;  // convention notes, advisory interpretation

    nlohmann::ordered_json to_json() const;
};

/// Kernel and cokernel of theta_G with Smith invariants; when theta_G is
/// injective the cokernel is the algebraic shadow of the v1-periodic
/// invariant (advisory interpretation only).
V1Report v1_invariant(const MoravaModule& G);

}  // namespace thetak

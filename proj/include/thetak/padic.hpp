#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetak {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct context_mismatch_error : error {
    context_mismatch_error() : error("p-adic context mismatch") {}
};
struct non_unit_error : error {
    explicit non_unit_error(const std::string& what) : error(what) {}
};
struct insufficient_valuation_error : error {
    explicit insufficient_valuation_error(const std::string& what) : error(what) {}
};
struct depth_exceeded_error : error {
    explicit depth_exceeded_error(const std::string& what) : error(what) {}
};
struct size_guard_error : error {
    explicit size_guard_error(const std::string& what) : error(what) {}
};

/// Returns the smallest positive integer whose class generates the units
/// modulo p^2 (and hence modulo every power of the odd prime p).
int64_t topological_generator(int64_t p);

/**
 * Fixed-precision arithmetic context for the p-adic integers: an odd prime p,
 * a precision exponent N (all residues live in [0, p^N)), and the chosen
 * topological generator g of the p-adic units.
 *
 * p = 2 is rejected: the algebra identities downstream need p odd.
 */
class PadicContext {
  public:
    PadicContext(int64_t p, int precision);

    int64_t p() const { return p_; }
    int precision() const { return precision_; }
    int64_t generator() const { return g_; }
    int64_t modulus() const { return pow_[precision_]; }
    int64_t p_pow(int k) const { return pow_.at(static_cast<size_t>(k)); }

    int64_t reduce(int64_t x) const {
        int64_t m = modulus();
        x %= m;
        return x < 0 ? x + m : x;
    }

    // Largest v <= N with p^v | x; residue 0 saturates to N.
    int valuation(int64_t x) const;

    int64_t mul(int64_t a, int64_t b) const { return reduce(a * b); }
    int64_t add(int64_t a, int64_t b) const { return reduce(a + b); }
    int64_t sub(int64_t a, int64_t b) const { return reduce(a - b); }
    int64_t neg(int64_t a) const { return reduce(-a); }
    int64_t pow_mod(int64_t base, int64_t exp) const;

    // Inverse of a unit residue; throws non_unit_error on positive valuation.
    int64_t inv(int64_t a) const;

    // Discrete logarithm base g of the unit k: the e in [0, phi(p^N)) with
    // g^e = k mod p^N. Brute force; desk scale only.
    int64_t discrete_log(int64_t k) const;

    int64_t unit_group_order() const { return (p_ - 1) * pow_[precision_ - 1]; }

    bool operator==(const PadicContext& o) const {
        return p_ == o.p_ && precision_ == o.precision_;
    }

  private:
    int64_t p_;
    int precision_;
    int64_t g_;
    std::vector<int64_t> pow_;  // pow_[k] = p^k, k = 0..N
};

/**
 * A p-adic integer at fixed precision: a residue in [0, p^N) together with
 * its effective precision (the residue is only meaningful mod p^prec).
 * Exact division by p^k lowers the effective precision by k; all other ring
 * operations take the minimum of the operands' precisions.
 */
class PadicScalar {
  public:
    PadicScalar() : ctx_(nullptr), residue_(0), prec_(0) {}
    PadicScalar(const PadicContext& ctx, int64_t value)
        : ctx_(&ctx), residue_(ctx.reduce(value)), prec_(ctx.precision()) {}
    PadicScalar(const PadicContext& ctx, int64_t value, int prec)
        : ctx_(&ctx), residue_(ctx.reduce(value)), prec_(prec) {}

    const PadicContext& ctx() const { return *ctx_; }
    int64_t residue() const { return residue_; }
    int prec() const { return prec_; }

    // Canonical representative: residue reduced mod p^prec.
    int64_t canonical_residue() const {
        return prec_ >= ctx_->precision() ? residue_
                                          : residue_ % ctx_->p_pow(prec_);
    }

    bool is_zero() const { return canonical_residue() == 0; }
    int valuation() const { return ctx_->valuation(residue_); }

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator-() const;
    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }

    PadicScalar invert() const;
    PadicScalar pow(int64_t e) const;

    // Exact division by p^k; requires valuation >= k. Precision drops by k.
    PadicScalar exact_div_p(int k) const;

    // Equality mod p^min(prec, o.prec).
    bool operator==(const PadicScalar& o) const { return equals_mod(o, ctx_->precision()); }
    bool operator!=(const PadicScalar& o) const { return !(*this == o); }
    bool equals_mod(const PadicScalar& o, int k) const;

    std::string str() const;

  private:
    const PadicContext* ctx_;
    int64_t residue_;
    int prec_;

    void check_ctx(const PadicScalar& o) const {
        if (!(ctx_ && o.ctx_ && *ctx_ == *o.ctx_)) throw context_mismatch_error();
    }
};

}  // namespace thetak

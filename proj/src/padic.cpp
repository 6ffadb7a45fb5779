#include "thetak/padic.hpp"

#include <algorithm>

namespace thetak {

namespace {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int64_t pow_mod_raw(int64_t base, int64_t exp, int64_t m) {
    int64_t r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % m;
        base = (base * base) % m;
        exp >>= 1;
    }
    return r;
}

int64_t order_mod(int64_t a, int64_t m, int64_t group_order) {
    // Smallest d | group_order with a^d = 1.
    int64_t cur = a % m, d = 1;
    while (cur != 1) {
        cur = (cur * a) % m;
        ++d;
        if (d > group_order) return -1;
    }
    return d;
}

}  // namespace

int64_t topological_generator(int64_t p) {
    if (p == 2 || !is_prime(p)) throw error("topological_generator: p must be an odd prime");
    int64_t m = p * p;
    int64_t phi = p * (p - 1);
    for (int64_t g = 2; g < m; ++g) {
        if (g % p == 0) continue;
        if (order_mod(g, m, phi) == phi) return g;
    }
    throw error("topological_generator: unreachable");
}

PadicContext::PadicContext(int64_t p, int precision) : p_(p), precision_(precision) {
    if (p == 2) throw error("PadicContext: p = 2 is not supported");
    if (!is_prime(p)) throw error("PadicContext: p must be prime");
    if (precision < 1) throw error("PadicContext: precision must be >= 1");
    pow_.resize(static_cast<size_t>(precision) + 1);
    pow_[0] = 1;
    for (int k = 1; k <= precision; ++k) {
        if (pow_[k - 1] > (int64_t(1) << 31) / p)
            throw error("PadicContext: p^N exceeds the supported 2^31 bound");
        pow_[static_cast<size_t>(k)] = pow_[static_cast<size_t>(k) - 1] * p;
    }
    g_ = topological_generator(p);
}

int PadicContext::valuation(int64_t x) const {
    x = reduce(x);
    if (x == 0) return precision_;
    int v = 0;
    while (x % p_ == 0) {
        x /= p_;
        ++v;
    }
    return v;
}

int64_t PadicContext::pow_mod(int64_t base, int64_t exp) const {
    return pow_mod_raw(reduce(base), exp, modulus());
}

int64_t PadicContext::inv(int64_t a) const {
    a = reduce(a);
    if (a % p_ == 0)
        throw non_unit_error("invert: residue " + std::to_string(a) + " has positive valuation");
    // a^(phi(p^N)-1) = a^{-1} for units.
    return pow_mod(a, unit_group_order() - 1);
}

int64_t PadicContext::discrete_log(int64_t k) const {
    k = reduce(k);
    if (k % p_ == 0) throw non_unit_error("discrete_log: not a unit");
    int64_t cur = 1 % modulus();
    int64_t ord = unit_group_order();
    for (int64_t e = 0; e < ord; ++e) {
        if (cur == k) return e;
        cur = mul(cur, g_);
    }
    throw error("discrete_log: unreachable for a unit");
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    check_ctx(o);
    return PadicScalar(*ctx_, ctx_->add(residue_, o.residue_), std::min(prec_, o.prec_));
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
    check_ctx(o);
    return PadicScalar(*ctx_, ctx_->sub(residue_, o.residue_), std::min(prec_, o.prec_));
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    check_ctx(o);
    return PadicScalar(*ctx_, ctx_->mul(residue_, o.residue_), std::min(prec_, o.prec_));
}

PadicScalar PadicScalar::operator-() const {
    return PadicScalar(*ctx_, ctx_->neg(residue_), prec_);
}

PadicScalar PadicScalar::invert() const {
    return PadicScalar(*ctx_, ctx_->inv(residue_), prec_);
}

PadicScalar PadicScalar::pow(int64_t e) const {
    if (e < 0) return invert().pow(-e);
    return PadicScalar(*ctx_, ctx_->pow_mod(residue_, e), prec_);
}

PadicScalar PadicScalar::exact_div_p(int k) const {
    if (k < 0) throw error("exact_div_p: negative exponent");
    if (k == 0) return *this;
    if (valuation() < k)
        throw insufficient_valuation_error("exact_div_p: valuation " +
                                           std::to_string(valuation()) + " < " + std::to_string(k));
    return PadicScalar(*ctx_, residue_ / ctx_->p_pow(k), prec_ - k);
}

bool PadicScalar::equals_mod(const PadicScalar& o, int k) const {
    check_ctx(o);
    int m = std::min({prec_, o.prec_, k});
    if (m <= 0) return true;  // nothing left to compare at this precision
    int64_t q = ctx_->p_pow(m);
    return (ctx_->sub(residue_, o.residue_) % q) == 0;
}

std::string PadicScalar::str() const {
    std::string s = std::to_string(canonical_residue());
    if (prec_ < ctx_->precision()) s += "+O(p^" + std::to_string(prec_) + ")";
    return s;
}

}  // namespace thetak

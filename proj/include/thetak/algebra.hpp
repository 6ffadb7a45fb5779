#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetak/mat.hpp"
#include "thetak/padic.hpp"

namespace thetak {

enum class GenKind {
    Exterior,        // odd, square zero
    TruncatedPoly,   // even, x^n = 0
    FreeThetaLayer,  // odd exterior generator theta^t(x_i) of a free theta-algebra
};

struct Generator {
    std::string name;
    int degree = 1;  // internal Z-degree; parity is degree mod 2
    GenKind kind = GenKind::Exterior;
    int trunc = 0;   // TruncatedPoly: x^trunc = 0
    int base = -1;   // FreeThetaLayer: index of the underlying G-generator
    int layer = 0;   // FreeThetaLayer: t in theta^t

    bool odd() const { return ((degree % 2) + 2) % 2 == 1; }
    int exponent_cap() const { return kind == GenKind::TruncatedPoly ? trunc - 1 : 1; }
};

/// Monomial: sorted sequence of (generator index, exponent); odd generators
/// appear with exponent 1 only. The empty monomial is the unit.
using Monomial = std::vector<std::pair<int, int>>;

/**
 * Presentation of a graded-commutative algebra: a generator list whose kinds
 * determine the monomial relations. The full monomial basis is enumerated up
 * front (everything here is desk scale). Presentations are created through
 * make_presentation and shared immutably, so elements can hold on to them
 * across copies and moves of the enclosing algebra.
 */
class AlgebraPresentation : public std::enable_shared_from_this<AlgebraPresentation> {
  public:
    AlgebraPresentation(const PadicContext& ctx, std::vector<Generator> gens);

    const PadicContext& ctx() const { return *ctx_; }
    const std::vector<Generator>& gens() const { return gens_; }
    int gen_count() const { return static_cast<int>(gens_.size()); }

    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<Monomial>& basis() const { return basis_; }
    int basis_index(const Monomial& m) const;

    int monomial_degree(const Monomial& m) const;
    int monomial_parity(const Monomial& m) const;
    int odd_factor_count(const Monomial& m) const;
    std::string monomial_str(const Monomial& m) const;

    // Graded-commutative product of monomials; nullopt when killed by a
    // relation, otherwise the sorted monomial with its Koszul sign.
    std::optional<std::pair<Monomial, int>> mono_mul(const Monomial& a, const Monomial& b) const;

    bool same_as(const AlgebraPresentation& o) const { return this == &o || key_ == o.key_; }

  private:
    const PadicContext* ctx_;
    std::vector<Generator> gens_;
    std::vector<Monomial> basis_;
    std::map<Monomial, int> basis_index_;
    std::string key_;
};

using PresPtr = std::shared_ptr<const AlgebraPresentation>;
PresPtr make_presentation(const PadicContext& ctx, std::vector<Generator> gens);

/// Sparse element: monomial -> coefficient, zero coefficients pruned.
/// Elements share ownership of their presentation.
class AlgebraElement {
  public:
    AlgebraElement() = default;
    explicit AlgebraElement(const AlgebraPresentation& pres)
        : pres_(pres.shared_from_this()) {}
    static AlgebraElement scalar(const AlgebraPresentation& pres, const PadicScalar& c);
    static AlgebraElement scalar(const AlgebraPresentation& pres, int64_t c);
    static AlgebraElement gen(const AlgebraPresentation& pres, int g);
    static AlgebraElement monomial(const AlgebraPresentation& pres, const Monomial& m,
                                   const PadicScalar& c);

    const AlgebraPresentation& pres() const { return *pres_; }
    const std::map<Monomial, PadicScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int min_prec() const;

    void add_term(const Monomial& m, const PadicScalar& c);
    PadicScalar coeff(const Monomial& m) const;
    PadicScalar augmentation() const { return coeff({}); }

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    AlgebraElement scale(const PadicScalar& c) const;
    AlgebraElement scale(int64_t c) const;
    AlgebraElement pow(int e) const;

    // Exact division of every coefficient by p^k.
    AlgebraElement exact_div_p(int k) const;

    bool homogeneous_parity() const;
    int parity() const;  // requires homogeneity
    AlgebraElement even_component() const;
    AlgebraElement odd_component() const;
    // Largest free-theta layer index appearing; -1 if none.
    int max_layer() const;
    int word_length_max() const;

    bool equals_mod(const AlgebraElement& o, int k) const;
    bool operator==(const AlgebraElement& o) const;

    // Coefficient vector in basis order / element from such a vector.
    Mat to_vector() const;
    static AlgebraElement from_vector(const AlgebraPresentation& pres, const Mat& v);

    std::string str() const;

  private:
    PresPtr pres_;
    std::map<Monomial, PadicScalar> terms_;
};

}  // namespace thetak

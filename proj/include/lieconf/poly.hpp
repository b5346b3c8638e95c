#pragma once

#include "lieconf/context.hpp"
#include "lieconf/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lieconf {

/// Dense exponent vector over a context's variables.
using Exponents = std::vector<std::uint32_t>;

struct Term {
    Exponents mono;
    Rational coeff;
};

/// Ascending graded-lex order: total degree first, then earlier variables
/// weigh more. This is the storage order and the rendering order.
bool mono_less(const Exponents& a, const Exponents& b);

/// Sparse multivariate polynomial over Q with a fixed variable context.
/// Terms are kept sorted (mono_less) with no zero coefficients, so equality
/// is plain structural equality. Values are immutable in spirit: every
/// operation returns a fresh polynomial.
class ExactPoly {
public:
    static ExactPoly zero(ContextPtr ctx);
    static ExactPoly constant(ContextPtr ctx, Rational value);
    static ExactPoly variable(ContextPtr ctx, std::string_view name);
    static ExactPoly monomial(ContextPtr ctx, Exponents mono, Rational coeff);
    /// Canonicalizes: merges equal monomials, drops zeros, sorts.
    static ExactPoly from_terms(ContextPtr ctx, std::vector<Term> terms);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Rational value if the polynomial is constant (zero counts as 0).
    std::optional<Rational> as_rational() const;

    unsigned degree_in(std::size_t var) const;
    unsigned total_degree() const;
    bool depends_on(std::size_t var) const;
    bool depends_on_any_formal() const;
    bool depends_on_any_parameter() const;

    ExactPoly operator-() const;
    ExactPoly operator+(const ExactPoly& q) const;
    ExactPoly operator-(const ExactPoly& q) const;
    ExactPoly operator*(const ExactPoly& q) const;
    ExactPoly operator*(const Rational& c) const;
    ExactPoly& operator+=(const ExactPoly& q) { return *this = *this + q; }
    ExactPoly& operator-=(const ExactPoly& q) { return *this = *this - q; }
    ExactPoly& operator*=(const ExactPoly& q) { return *this = *this * q; }

    bool operator==(const ExactPoly& q) const;

    ExactPoly pow(unsigned e) const;

    /// Every occurrence of `var` replaced by `repl`, fully expanded
    /// (single simultaneous pass; `repl` may itself involve `var`).
    ExactPoly substitute(std::size_t var, const ExactPoly& repl) const;
    ExactPoly substitute(std::string_view var, const ExactPoly& repl) const;

    /// Polynomial coefficient of var^k (a polynomial with var-degree 0).
    ExactPoly coeff_of(std::size_t var, unsigned k) const;
    ExactPoly coeff_of(std::string_view var, unsigned k) const;

    /// Embeds into a context whose variables include this one's, matching
    /// by name.
    ExactPoly lift_to(ContextPtr bigger) const;

    /// Canonical text rendering, e.g. "(1-b)*la + pa": terms grouped by
    /// their monomial in the formal variables, groups and coefficient
    /// polynomials both in ascending graded-lex order.
    std::string str() const;

private:
    ExactPoly(ContextPtr ctx, std::vector<Term> terms)
        : ctx_(std::move(ctx)), terms_(std::move(terms)) {}
    void canonicalize();

    ContextPtr ctx_;
    std::vector<Term> terms_;
};

inline ExactPoly operator*(const Rational& c, const ExactPoly& p) { return p * c; }

/// Requires ctx-identical operands; throws ContextMismatchError otherwise.
void require_same_context(const ExactPoly& p, const ExactPoly& q);

/// Exact division of p by d along `var`, treating both as polynomials in
/// `var` over the remaining variables. The divisor must have positive degree
/// in `var` and a leading coefficient that is a nonzero rational (throws
/// NotMonicError otherwise). Returns the quotient when the remainder is
/// identically zero, std::nullopt otherwise.
std::optional<ExactPoly> exact_divide(const ExactPoly& p, const ExactPoly& d, std::size_t var);
std::optional<ExactPoly> exact_divide(const ExactPoly& p, const ExactPoly& d, std::string_view var);

} // namespace lieconf

#pragma once

#include "lieconf/poly.hpp"
#include "lieconf/report.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lieconf {

using GeneratorId = std::size_t;

/// Element of the free C[pa]-module on the generators: one coefficient
/// polynomial (in pa and parameters only) per generator.
struct ConformalElement {
    std::vector<ExactPoly> coeffs;
};

/// A lambda-bracket value: coefficients in pa, la (and parameters).
struct LambdaElement {
    std::vector<ExactPoly> coeffs;

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!c.is_zero())
                return false;
        return true;
    }
};

/// Finite Lie conformal algebra presented by its generator basis and the
/// full table of pairwise lambda-brackets.
class ConformalAlgebra {
public:
    ConformalAlgebra(std::string name, ContextPtr ctx, std::vector<std::string> generators,
                     std::vector<std::vector<LambdaElement>> table,
                     std::map<std::string, Rational> pins = {}, std::string family = "");

    const std::string& name() const { return name_; }
    const ContextPtr& context() const { return ctx_; }
    std::size_t rank() const { return generators_.size(); }
    const std::vector<std::string>& generator_names() const { return generators_; }
    const std::string& generator_name(GeneratorId i) const { return generators_.at(i); }
    std::optional<GeneratorId> find_generator(std::string_view name) const;
    GeneratorId generator_index(std::string_view name) const;

    const LambdaElement& entry(GeneratorId i, GeneratorId j) const;

    /// Pinned value of a parameter, if any ("b" for the W family).
    std::optional<Rational> pinned(std::string_view param) const;
    const std::map<std::string, Rational>& pins() const { return pins_; }

    /// Builtin family tag: "vir", "w", "sv", or "" for user algebras.
    const std::string& family() const { return family_; }

    ConformalElement zero_element() const;
    ConformalElement generator(GeneratorId i) const;
    ConformalElement generator(std::string_view name) const;
    LambdaElement zero_lambda() const;

private:
    std::string name_;
    ContextPtr ctx_;
    std::vector<std::string> generators_;
    std::vector<std::vector<LambdaElement>> table_;
    std::map<std::string, Rational> pins_;
    std::string family_;
};

using AlgebraPtr = std::shared_ptr<const ConformalAlgebra>;

// element arithmetic
ConformalElement add(const ConformalElement& a, const ConformalElement& b);
ConformalElement scale(const ExactPoly& f, const ConformalElement& a);
ConformalElement scale(const Rational& c, const ConformalElement& a);
LambdaElement add(const LambdaElement& a, const LambdaElement& b);
LambdaElement sub(const LambdaElement& a, const LambdaElement& b);
LambdaElement scale(const ExactPoly& f, const LambdaElement& a);
bool equal(const LambdaElement& a, const LambdaElement& b);
bool equal(const ConformalElement& a, const ConformalElement& b);
bool is_zero(const ConformalElement& a);

/// [a_la b] extended from the table by sesquilinearity:
/// [f(pa) g_i la h(pa) g_j] = f(-la) h(pa+la) [g_i la g_j].
LambdaElement bracket(const ConformalAlgebra& A, const ConformalElement& a,
                      const ConformalElement& b);

/// Residuals of [g_i la g_j] + [g_j mu g_i]|_{mu -> -la-pa} per pair.
CheckReport check_skew(const ConformalAlgebra& A);

/// Residuals of [a la [b mu c]] - [[a la b] la+mu c] - [b mu [a la c]] over
/// all ordered generator triples, as polynomials in pa, la, mu.
CheckReport check_jacobi(const ConformalAlgebra& A);

/// a_(j) b = j! * (coefficient of la^j in [a la b]).
ConformalElement j_product(const ConformalAlgebra& A, const ConformalElement& a,
                           const ConformalElement& b, unsigned j);

/// Smallest n with g_i_(m) g_j = 0 for all m >= n (la-degree of the table
/// entry plus one; 0 for a zero entry).
unsigned locality_bound(const ConformalAlgebra& A, GeneratorId i, GeneratorId j);
unsigned locality_bound(const ConformalAlgebra& A);

/// Verifies the j-product identities for all generator pairs and
/// 0 <= n <= n_max:  (pa a)_(n) b = -n a_(n-1) b  and
/// a_(n) b = sum_j (-1)^(n+j+1) pa^j/j! (b_(n+j) a), plus vanishing beyond
/// the locality bound. Requires n_max >= locality bound of every pair.
CheckReport check_j_product_axioms(const ConformalAlgebra& A, unsigned n_max);

// Builtin constructors. make_w() keeps b symbolic; make_w(q) pins b = q.
ConformalAlgebra make_virasoro();
ConformalAlgebra make_w();
ConformalAlgebra make_w(const Rational& b);
ConformalAlgebra make_hv();
ConformalAlgebra make_w22();
ConformalAlgebra make_sv();

/// Resolves a builtin selector: "vir", "w:b", "w:<rational>", "hv", "w22",
/// "sv". Returns nothing for unknown selectors.
std::optional<ConformalAlgebra> builtin_algebra(std::string_view selector);

std::string str(const ConformalAlgebra& A, const LambdaElement& e);
std::string str(const ConformalAlgebra& A, const ConformalElement& e);

} // namespace lieconf

#pragma once

#include "lieconf/conformal.hpp"

#include <compare>
#include <map>

namespace lieconf {

/// Basis symbol a_(m) of the annihilation algebra: generator plus raw degree.
/// The displayed index is raw - shift(generator) and may be a half-integer.
struct AnnBasisElt {
    GeneratorId gen;
    unsigned raw;
    auto operator<=>(const AnnBasisElt&) const = default;
};

/// Finite linear combination of basis symbols with parameter-only
/// polynomial coefficients, plus an optional multiple of the adjoined pa.
struct AnnElement {
    std::map<AnnBasisElt, ExactPoly> terms;
    ExactPoly del;

    explicit AnnElement(const ContextPtr& ctx) : del(ExactPoly::zero(ctx)) {}
    bool is_zero() const;
    /// terms[e] += c, erasing the entry when it cancels.
    void add_term(const AnnBasisElt& e, const ExactPoly& c);
};

bool equal(const AnnElement& a, const AnnElement& b);
AnnElement add(const AnnElement& a, const AnnElement& b);
AnnElement scale(const ExactPoly& c, const AnnElement& a);
AnnElement scale(const Rational& c, const AnnElement& a);

/// The (extended) annihilation algebra of a finite Lie conformal algebra:
/// bracket of basis symbols via binomial sums of j-products, with pa acting
/// by lowering raw degrees.
class AnnAlgebra {
public:
    explicit AnnAlgebra(AlgebraPtr source);
    AnnAlgebra(AlgebraPtr source, std::vector<Rational> shifts);

    const ConformalAlgebra& source() const { return *source_; }
    const AlgebraPtr& source_ptr() const { return source_; }
    const ContextPtr& context() const { return source_->context(); }

    const Rational& shift(GeneratorId g) const { return shifts_.at(g); }
    Rational display_index(const AnnBasisElt& e) const;
    /// Integer layer of the filtration the element belongs to
    /// (floor of the display index; Y_{i+1/2} lies in layer i).
    long layer(const AnnBasisElt& e) const;
    /// Basis symbol with the given display index; throws DomainError when
    /// the corresponding raw degree would be negative or fractional.
    AnnBasisElt at_display(GeneratorId g, const Rational& display) const;

    AnnElement zero() const { return AnnElement(context()); }
    AnnElement basis(GeneratorId g, unsigned raw) const;
    AnnElement basis(const AnnBasisElt& e) const { return basis(e.gen, e.raw); }
    /// The adjoined derivation.
    AnnElement partial() const;

    /// j-products g_i_(n) g_j of generators, empty beyond the locality bound.
    const ConformalElement& j_table(GeneratorId i, GeneratorId j, unsigned n) const;
    unsigned j_table_size(GeneratorId i, GeneratorId j) const;

    /// Paper display conventions: L -> 1, H/M -> 0, Y -> 1/2, others 0.
    static std::vector<Rational> default_shifts(const ConformalAlgebra& A);

private:
    AlgebraPtr source_;
    std::vector<Rational> shifts_;
    std::vector<std::vector<std::vector<ConformalElement>>> jtab_;
};

/// [a_(m), b_(n)] = sum_j C(m,j) (a_(j) b)_(m+n-j), with (pa a)_(d) terms
/// rewritten through (pa a)_(d) = -d a_(d-1); [pa, a_(n)] = -n a_(n-1).
AnnElement ann_bracket(const AnnAlgebra& A, const AnnElement& x, const AnnElement& y);

/// Compares ann_bracket output against the closed-form structure constants
/// of the source family (W(b) or SV), including the pa-lowering rules, for
/// all basis pairs with display index <= N.
CheckReport verify_presentation(const AnnAlgebra& A, long N);

/// Closed-form bracket of two basis symbols for the builtin families;
/// nothing for algebras without a known presentation.
std::optional<AnnElement> closed_form_bracket(const AnnAlgebra& A, const AnnBasisElt& x,
                                              const AnnBasisElt& y);

/// True iff [x, e] = 0 for every basis element of raw degree <= N and for
/// the adjoined pa.
bool is_central(const AnnAlgebra& A, const AnnElement& x, long N);

/// Row-echelon span over the basis symbols of layers [-1, N]; all bracket
/// arithmetic on it is performed modulo layers > N. Row entries are
/// parameter polynomials; a symbolic b is treated as generic when pivoting.
struct TruncatedSubspace {
    long trunc;
    std::vector<AnnBasisElt> ambient;
    std::vector<std::vector<ExactPoly>> rows;

    std::size_t dim() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
};

/// Span of all basis elements with layer in [n, N] ("H_{-1} = 0" convention
/// is automatic: only raw degrees >= 0 exist). Requires n >= -1.
TruncatedSubspace filtration(const AnnAlgebra& A, long n, long N);

TruncatedSubspace span_of(const AnnAlgebra& A, const std::vector<AnnElement>& elems, long N);
bool subspace_contains(const TruncatedSubspace& S, const AnnElement& x);
bool subspace_contains(const TruncatedSubspace& S, const TruncatedSubspace& T);
bool subspace_equal(const TruncatedSubspace& S, const TruncatedSubspace& T);

/// S = S^(0), S^(k+1) = span [S^(k), S^(k)] modulo truncation; the seed must
/// be closed under the bracket (ClosureError otherwise). Returns the chain
/// S^(0) .. S^(steps).
std::vector<TruncatedSubspace> derived_series(const AnnAlgebra& A, const TruncatedSubspace& S,
                                              unsigned steps);

struct SolvabilityResult {
    bool solvable;
    unsigned derived_length;
    bool nests_single; // S^(k) inside layer-k filtration for all k
    bool nests_double; // S^(2k) inside layer-k filtration for all k
};

/// Derived series of the layer-0 subalgebra modulo the layer-N filtration.
SolvabilityResult is_solvable_quotient(const AnnAlgebra& A, long N);

std::string str(const AnnAlgebra& A, const AnnBasisElt& e);
std::string str(const AnnAlgebra& A, const AnnElement& x);

} // namespace lieconf

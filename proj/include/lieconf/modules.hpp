#pragma once

#include "lieconf/conformal.hpp"

#include <optional>

namespace lieconf {

/// Rank-one family data. A nullopt delta/alpha stays symbolic (variables D
/// and a in the module's context). beta is meaningful only when has_beta is
/// set: then H_la v = beta v (requiring b pinned to 0 unless beta is pinned
/// to 0); without it H acts by zero.
struct RankOneParams {
    std::optional<Rational> delta;
    std::optional<Rational> alpha;
    bool has_beta = false;
    std::optional<Rational> beta;
};

struct ModuleFamily {
    enum class Kind { w_rank1, sv_rank1 };
    Kind kind;
    RankOneParams params;
};

/// Free conformal module of finite rank with a lambda-action table.
/// action(g, s) is g_la v_s written over the basis, with coefficients in
/// pa, la and parameters.
class ConformalModule {
public:
    ConformalModule(AlgebraPtr algebra, ContextPtr ctx, std::string name,
                    std::vector<std::string> basis,
                    std::vector<std::vector<LambdaElement>> action,
                    std::optional<ModuleFamily> family = std::nullopt);

    const ConformalAlgebra& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    const ContextPtr& context() const { return ctx_; }
    const std::string& name() const { return name_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<std::string>& basis_names() const { return basis_; }
    const LambdaElement& action_on(GeneratorId g, std::size_t s) const;
    const std::optional<ModuleFamily>& family() const { return family_; }

    /// The algebra's bracket table lifted into the module's context.
    const LambdaElement& lifted_entry(GeneratorId i, GeneratorId j) const;

private:
    AlgebraPtr algebra_;
    ContextPtr ctx_;
    std::string name_;
    std::vector<std::string> basis_;
    std::vector<std::vector<LambdaElement>> action_; // [generator][basis vector]
    std::vector<std::vector<LambdaElement>> lifted_table_;
    std::optional<ModuleFamily> family_;
};

/// Module element: coefficients in pa and parameters over the basis.
struct ModuleElement {
    std::vector<ExactPoly> coeffs;
};

/// Sesquilinear extension of the action table; the result's coefficients
/// live in pa, la and parameters.
LambdaElement action(const ConformalModule& M, const ConformalElement& a, const ModuleElement& w);

/// Residuals of a_la (b_mu v) - b_mu (a_la v) - [a_la b]_(la+mu) v over all
/// generator pairs and basis vectors.
CheckReport check_module_axioms(const ConformalModule& M);

/// The rank-one family over W(b): L_la v = (pa + alpha + Delta la) v and
/// H_la v = beta v when b is pinned to 0, else 0. A beta that is symbolic or
/// pinned nonzero requires b pinned to exactly 0 (DeltaBranchError).
ConformalModule make_rank_one_w(AlgebraPtr W, const RankOneParams& params);
ConformalModule make_rank_one_w(const ConformalAlgebra& W, const RankOneParams& params);

/// The rank-one family over SV: L acts as above, M and Y act by zero.
ConformalModule make_rank_one_sv(std::optional<Rational> delta, std::optional<Rational> alpha);

/// Certificate that f(pa) generates a proper submodule: for every algebra
/// generator g, the exact quotient of f(pa+la) Q_g(pa,la) by f(pa).
struct SubmoduleWitness {
    ExactPoly generator_poly;
    std::vector<std::pair<std::string, ExactPoly>> quotients;
};

/// Divisibility test for rank-one modules with pinned parameters: succeeds
/// iff f(pa) | f(pa+la) Q_g(pa,la) for every generator g.
std::optional<SubmoduleWitness> submodule_test(const ConformalModule& M, const ExactPoly& f);

/// Complete list of monic generators of proper nonzero submodules, found by
/// root-forcing: candidate roots are the common rational roots of the
/// la-coefficients of all Q_g, and every monic product of candidates up to
/// degree_cap is tried through submodule_test.
std::vector<ExactPoly> find_submodules(const ConformalModule& M, unsigned degree_cap = 4);

struct IrreducibilityVerdict {
    bool irreducible;
    bool analytic;                             // from the classification criterion
    bool search;                               // from find_submodules
    std::vector<ExactPoly> submodule_generators;
    std::vector<SubmoduleWitness> certificates;
};

/// Runs both the analytic classification criterion and the submodule search;
/// throws InconsistencyError when the verdicts disagree.
IrreducibilityVerdict is_irreducible(const ConformalModule& M, unsigned degree_cap = 4);

/// Checks that w = (pa + alpha) v inside M_{0,alpha,0} over W(0) transforms
/// exactly like the generator of M_{1,alpha,0}; alpha may stay symbolic.
CheckReport check_unique_submodule_iso(const std::optional<Rational>& alpha);

/// Checks the two structural isomorphisms around SV: the (L, M) span matches
/// W(0) under L -> L, M -> H, and SV modulo the M-ideal matches W(-1/2)
/// under L -> L, Y -> H.
CheckReport quotient_by_ideal_check();

/// Rational roots of a polynomial that is univariate in `var` with plain
/// rational coefficients.
std::vector<Rational> rational_roots(const ExactPoly& p, std::size_t var);

std::string str(const ConformalModule& M, const ModuleElement& w);

} // namespace lieconf

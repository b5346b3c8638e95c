#include "lieconf/modules.hpp"

#include <algorithm>
#include <functional>

namespace lieconf {

namespace {

std::string pretty_param(const char* name, const std::optional<Rational>& v) {
    return std::string(name) + "=" + (v ? to_string(*v) : "?");
}

LambdaElement lift_lambda(const LambdaElement& e, const ContextPtr& ctx) {
    LambdaElement out = e;
    for (auto& c : out.coeffs)
        c = c.lift_to(ctx);
    return out;
}

} // namespace

ConformalModule::ConformalModule(AlgebraPtr algebra, ContextPtr ctx, std::string name,
                                 std::vector<std::string> basis,
                                 std::vector<std::vector<LambdaElement>> action,
                                 std::optional<ModuleFamily> family)
    : algebra_(std::move(algebra)), ctx_(std::move(ctx)), name_(std::move(name)),
      basis_(std::move(basis)), action_(std::move(action)), family_(std::move(family)) {
    if (!algebra_)
        throw DomainError("module needs a base algebra");
    if (basis_.empty())
        throw DomainError("module rank must be >= 1");
    if (!algebra_->context()->subset_of(*ctx_))
        throw ContextMismatchError("module context must contain the algebra's variables");
    if (action_.size() != algebra_->rank())
        throw DomainError("action table must cover every generator");
    for (const auto& row : action_) {
        if (row.size() != basis_.size())
            throw DomainError("action table must cover every basis vector");
        for (const auto& e : row) {
            if (e.coeffs.size() != basis_.size())
                throw DomainError("action entry has wrong coordinate count");
            for (const auto& p : e.coeffs) {
                if (!p.context()->same_as(*ctx_))
                    throw ContextMismatchError("action entry over a different variable context");
                if (p.depends_on(PolyContext::kMu) || p.depends_on(PolyContext::kNu))
                    throw DomainError("action entries must be polynomials in pa, la only");
            }
        }
    }
    for (GeneratorId i = 0; i < algebra_->rank(); ++i) {
        std::vector<LambdaElement> row;
        for (GeneratorId j = 0; j < algebra_->rank(); ++j)
            row.push_back(lift_lambda(algebra_->entry(i, j), ctx_));
        lifted_table_.push_back(std::move(row));
    }
}

const LambdaElement& ConformalModule::action_on(GeneratorId g, std::size_t s) const {
    return action_.at(g).at(s);
}

const LambdaElement& ConformalModule::lifted_entry(GeneratorId i, GeneratorId j) const {
    return lifted_table_.at(i).at(j);
}

LambdaElement action(const ConformalModule& M, const ConformalElement& a, const ModuleElement& w) {
    const auto& ctx = M.context();
    if (a.coeffs.size() != M.algebra().rank())
        throw ContextMismatchError("element does not match the algebra's generator basis");
    if (w.coeffs.size() != M.rank())
        throw ContextMismatchError("module element does not match the basis");
    auto la = ExactPoly::variable(ctx, "la");
    auto pa_plus_la = ExactPoly::variable(ctx, "pa") + la;

    LambdaElement out{std::vector<ExactPoly>(M.rank(), ExactPoly::zero(ctx))};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        ExactPoly fi = a.coeffs[i].lift_to(ctx);
        if (fi.is_zero())
            continue;
        if (fi.depends_on(PolyContext::kLambda) || fi.depends_on(PolyContext::kMu) ||
            fi.depends_on(PolyContext::kNu))
            throw DomainError("conformal element coefficients must involve only pa and parameters");
        fi = fi.substitute(PolyContext::kPartial, -la);
        for (std::size_t s = 0; s < w.coeffs.size(); ++s) {
            if (w.coeffs[s].is_zero())
                continue;
            if (!w.coeffs[s].context()->same_as(*ctx))
                throw ContextMismatchError("module element over a different variable context");
            ExactPoly factor = fi * w.coeffs[s].substitute(PolyContext::kPartial, pa_plus_la);
            const LambdaElement& entry = M.action_on(i, s);
            for (std::size_t t = 0; t < M.rank(); ++t)
                if (!entry.coeffs[t].is_zero())
                    out.coeffs[t] += factor * entry.coeffs[t];
        }
    }
    return out;
}

CheckReport check_module_axioms(const ConformalModule& M) {
    CheckReport report{"module-axioms", M.name(), {}};
    const auto& ctx = M.context();
    const auto& A = M.algebra();
    auto la = ExactPoly::variable(ctx, "la");
    auto mu = ExactPoly::variable(ctx, "mu");
    auto nu = ExactPoly::variable(ctx, "nu");
    auto pa = ExactPoly::variable(ctx, "pa");

    for (GeneratorId i = 0; i < A.rank(); ++i) {
        for (GeneratorId j = 0; j < A.rank(); ++j) {
            for (std::size_t s = 0; s < M.rank(); ++s) {
                std::vector<ExactPoly> residual(M.rank(), ExactPoly::zero(ctx));

                // a_la (b_mu v_s)
                const auto& inner_b = M.action_on(j, s);
                for (std::size_t t = 0; t < M.rank(); ++t) {
                    if (inner_b.coeffs[t].is_zero())
                        continue;
                    ExactPoly pt = inner_b.coeffs[t]
                                       .substitute(PolyContext::kLambda, mu)
                                       .substitute(PolyContext::kPartial, pa + la);
                    const auto& outer = M.action_on(i, t);
                    for (std::size_t u = 0; u < M.rank(); ++u)
                        residual[u] += pt * outer.coeffs[u];
                }

                // - b_mu (a_la v_s)
                const auto& inner_a = M.action_on(i, s);
                for (std::size_t t = 0; t < M.rank(); ++t) {
                    if (inner_a.coeffs[t].is_zero())
                        continue;
                    ExactPoly rt = inner_a.coeffs[t].substitute(PolyContext::kPartial, pa + mu);
                    const auto& outer = M.action_on(j, t);
                    for (std::size_t u = 0; u < M.rank(); ++u)
                        residual[u] -= rt * outer.coeffs[u].substitute(PolyContext::kLambda, mu);
                }

                // - [a_la b]_(la+mu) v_s, composed through a fresh nu
                const auto& br = M.lifted_entry(i, j);
                for (std::size_t m = 0; m < A.rank(); ++m) {
                    if (br.coeffs[m].is_zero())
                        continue;
                    ExactPoly qm = br.coeffs[m].substitute(PolyContext::kPartial, -nu);
                    const auto& act = M.action_on(m, s);
                    for (std::size_t u = 0; u < M.rank(); ++u) {
                        if (act.coeffs[u].is_zero())
                            continue;
                        ExactPoly piece = qm * act.coeffs[u].substitute(PolyContext::kLambda, nu);
                        residual[u] -= piece.substitute(PolyContext::kNu, la + mu);
                    }
                }

                for (std::size_t u = 0; u < M.rank(); ++u)
                    if (!residual[u].is_zero())
                        report.add("module(" + A.generator_name(i) + "," + A.generator_name(j) +
                                       ";" + M.basis_names()[s] + ") @ " + M.basis_names()[u],
                                   residual[u]);
            }
        }
    }
    return report;
}

namespace {

ExactPoly param_or_constant(const ContextPtr& ctx, const char* var,
                            const std::optional<Rational>& value) {
    if (value)
        return ExactPoly::constant(ctx, *value);
    return ExactPoly::variable(ctx, var);
}

} // namespace

ConformalModule make_rank_one_w(AlgebraPtr W, const RankOneParams& params) {
    if (!W || W->family() != "w" || !W->find_generator("L"))
        throw DomainError("make_rank_one_w needs a W(b)-family algebra");
    bool b_is_zero = W->pinned("b") == Rational(0);
    bool beta_nonzero_possible = params.has_beta && (!params.beta || *params.beta != 0);
    if (beta_nonzero_possible && !b_is_zero)
        throw DeltaBranchError("H can act by a nonzero scalar only when b is pinned to 0");

    std::vector<std::string> extra;
    if (!params.delta)
        extra.push_back("D");
    if (!params.alpha)
        extra.push_back("a");
    if (params.has_beta && !params.beta)
        extra.push_back("beta");
    auto ctx = W->context()->extend(extra);

    auto pa = ExactPoly::variable(ctx, "pa");
    auto la = ExactPoly::variable(ctx, "la");
    auto delta = param_or_constant(ctx, "D", params.delta);
    auto alpha = param_or_constant(ctx, "a", params.alpha);

    LambdaElement l_act{{pa + alpha + delta * la}};
    LambdaElement h_act{{ExactPoly::zero(ctx)}};
    if (params.has_beta && b_is_zero)
        h_act.coeffs[0] = param_or_constant(ctx, "beta", params.beta);

    std::vector<std::vector<LambdaElement>> action(W->rank());
    action[W->generator_index("L")] = {l_act};
    if (auto h = W->find_generator("H"))
        action[*h] = {h_act};

    RankOneParams normalized = params;
    if (!params.has_beta)
        normalized.beta = Rational(0);
    std::string name = "M{" + pretty_param("D", params.delta) + "," +
                       pretty_param("a", params.alpha) +
                       (params.has_beta ? "," + pretty_param("beta", params.beta) : "") + "} over " +
                       W->name();
    return ConformalModule(W, ctx, std::move(name), {"v"}, std::move(action),
                           ModuleFamily{ModuleFamily::Kind::w_rank1, normalized});
}

ConformalModule make_rank_one_w(const ConformalAlgebra& W, const RankOneParams& params) {
    return make_rank_one_w(std::make_shared<ConformalAlgebra>(W), params);
}

ConformalModule make_rank_one_sv(std::optional<Rational> delta, std::optional<Rational> alpha) {
    auto SV = std::make_shared<ConformalAlgebra>(make_sv());
    std::vector<std::string> extra;
    if (!delta)
        extra.push_back("D");
    if (!alpha)
        extra.push_back("a");
    auto ctx = SV->context()->extend(extra);

    auto pa = ExactPoly::variable(ctx, "pa");
    auto la = ExactPoly::variable(ctx, "la");
    LambdaElement l_act{{pa + param_or_constant(ctx, "a", alpha) +
                         param_or_constant(ctx, "D", delta) * la}};
    LambdaElement zero_act{{ExactPoly::zero(ctx)}};

    std::vector<std::vector<LambdaElement>> action(SV->rank(), {zero_act});
    action[SV->generator_index("L")] = {l_act};

    RankOneParams params{delta, alpha, false, Rational(0)};
    std::string name = "M{" + pretty_param("D", delta) + "," + pretty_param("a", alpha) +
                       "} over sv";
    return ConformalModule(SV, ctx, std::move(name), {"v"}, std::move(action),
                           ModuleFamily{ModuleFamily::Kind::sv_rank1, params});
}

namespace {

void require_rank_one_pinned(const ConformalModule& M) {
    if (M.rank() != 1)
        throw DomainError("submodule search is defined for rank-one modules only");
    for (GeneratorId g = 0; g < M.algebra().rank(); ++g)
        if (M.action_on(g, 0).coeffs[0].depends_on_any_parameter())
            throw NeedsPinnedParametersError(
                "submodule decisions need all parameters pinned to rationals");
}

bool is_monic_in_pa(const ExactPoly& f) {
    unsigned d = f.degree_in(PolyContext::kPartial);
    if (d == 0)
        return false;
    auto lead = f.coeff_of(PolyContext::kPartial, d).as_rational();
    return lead && *lead == 1;
}

} // namespace

std::optional<SubmoduleWitness> submodule_test(const ConformalModule& M, const ExactPoly& f) {
    require_rank_one_pinned(M);
    ExactPoly ff = f.lift_to(M.context());
    if (ff.depends_on(PolyContext::kLambda) || ff.depends_on(PolyContext::kMu) ||
        ff.depends_on(PolyContext::kNu) || ff.depends_on_any_parameter())
        throw DomainError("submodule generator must be a rational polynomial in pa");
    if (!is_monic_in_pa(ff))
        throw DomainError("submodule generator must be monic in pa");

    const auto& ctx = M.context();
    auto pa_plus_la = ExactPoly::variable(ctx, "pa") + ExactPoly::variable(ctx, "la");
    ExactPoly shifted = ff.substitute(PolyContext::kPartial, pa_plus_la);

    SubmoduleWitness w{ff, {}};
    for (GeneratorId g = 0; g < M.algebra().rank(); ++g) {
        const ExactPoly& q_g = M.action_on(g, 0).coeffs[0];
        auto quotient = exact_divide(shifted * q_g, ff, PolyContext::kPartial);
        if (!quotient)
            return std::nullopt;
        w.quotients.emplace_back(M.algebra().generator_name(g), std::move(*quotient));
    }
    return w;
}

std::vector<Rational> rational_roots(const ExactPoly& p, std::size_t var) {
    if (p.is_zero())
        throw DomainError("rational_roots of the zero polynomial");
    unsigned n = p.degree_in(var);
    std::vector<Rational> coeffs;
    for (unsigned k = 0; k <= n; ++k) {
        auto c = p.coeff_of(var, k).as_rational();
        if (!c)
            throw DomainError("rational_roots needs a univariate rational polynomial");
        coeffs.push_back(*c);
    }

    std::vector<Rational> roots;
    std::size_t low = 0;
    while (low < coeffs.size() && coeffs[low] == 0)
        ++low;
    if (low > 0)
        roots.push_back(Rational(0));
    if (low == coeffs.size() || low == n)
        return roots;

    // scale to a primitive integer polynomial
    Integer den_lcm(1);
    for (std::size_t k = low; k <= n; ++k)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), coeffs[k].get_den_mpz_t());
    std::vector<Integer> ic;
    for (std::size_t k = low; k <= n; ++k) {
        Rational scaled = coeffs[k] * Rational(den_lcm);
        ic.push_back(scaled.get_num());
    }

    auto divisors = [](Integer v) {
        std::vector<Integer> out;
        v = abs(v);
        for (Integer d(1); d * d <= v; ++d)
            if (v % d == 0) {
                out.push_back(d);
                out.push_back(v / d);
            }
        return out;
    };

    auto eval = [&](const Rational& x) {
        Rational acc(0);
        for (std::size_t k = ic.size(); k-- > 0;)
            acc = acc * x + Rational(ic[k]);
        return acc;
    };

    for (const auto& pnum : divisors(ic.front()))
        for (const auto& qden : divisors(ic.back()))
            for (int sign : {1, -1}) {
                Rational cand(sign * pnum, qden);
                cand.canonicalize();
                if (eval(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<ExactPoly> find_submodules(const ConformalModule& M, unsigned degree_cap) {
    require_rank_one_pinned(M);
    const auto& ctx = M.context();

    // Root forcing: a root r of a submodule generator must kill the whole
    // lambda-coefficient system Q_g(r, la) of every generator action.
    std::vector<ExactPoly> system;
    for (GeneratorId g = 0; g < M.algebra().rank(); ++g) {
        const ExactPoly& q = M.action_on(g, 0).coeffs[0];
        for (unsigned k = 0; k <= q.degree_in(PolyContext::kLambda); ++k) {
            auto c = q.coeff_of(PolyContext::kLambda, k);
            if (!c.is_zero())
                system.push_back(std::move(c));
        }
    }
    if (system.empty())
        throw DomainError("trivial module: every monic polynomial generates a submodule");

    std::vector<Rational> candidates;
    for (const auto& r : rational_roots(system.front(), PolyContext::kPartial)) {
        bool common = true;
        for (const auto& c : system)
            if (c.substitute(PolyContext::kPartial, ExactPoly::constant(ctx, r)).as_rational() !=
                Rational(0)) {
                common = false;
                break;
            }
        if (common)
            candidates.push_back(r);
    }

    std::vector<ExactPoly> found;
    if (candidates.empty())
        return found;

    auto pa = ExactPoly::variable(ctx, "pa");
    // monic products of candidate roots up to the degree cap
    std::function<void(std::size_t, unsigned, const ExactPoly&)> recurse =
        [&](std::size_t from, unsigned degree, const ExactPoly& f) {
            if (degree > 0 && submodule_test(M, f))
                found.push_back(f);
            if (degree == degree_cap)
                return;
            for (std::size_t i = from; i < candidates.size(); ++i)
                recurse(i, degree + 1,
                        f * (pa - ExactPoly::constant(ctx, candidates[i])));
        };
    recurse(0, 0, ExactPoly::constant(ctx, Rational(1)));

    std::sort(found.begin(), found.end(), [](const ExactPoly& x, const ExactPoly& y) {
        auto dx = x.degree_in(PolyContext::kPartial), dy = y.degree_in(PolyContext::kPartial);
        if (dx != dy)
            return dx < dy;
        return x.str() < y.str();
    });
    return found;
}

IrreducibilityVerdict is_irreducible(const ConformalModule& M, unsigned degree_cap) {
    if (!M.family())
        throw DomainError("no classification criterion known for this module");
    const auto& fam = *M.family();
    if (!fam.params.delta || !fam.params.alpha || (fam.kind == ModuleFamily::Kind::w_rank1 &&
                                                   fam.params.has_beta && !fam.params.beta))
        throw NeedsPinnedParametersError("classification needs pinned parameters");

    bool analytic;
    if (fam.kind == ModuleFamily::Kind::sv_rank1) {
        analytic = *fam.params.delta != 0;
    } else {
        bool b_zero = M.algebra().pinned("b") == Rational(0);
        Rational beta = fam.params.has_beta ? *fam.params.beta : Rational(0);
        analytic = *fam.params.delta != 0 || (b_zero && beta != 0);
    }

    IrreducibilityVerdict v{false, analytic, false, find_submodules(M, degree_cap), {}};
    v.search = v.submodule_generators.empty();
    for (const auto& f : v.submodule_generators) {
        auto w = submodule_test(M, f);
        if (!w)
            throw InconsistencyError("submodule generator failed its own certificate");
        v.certificates.push_back(std::move(*w));
    }
    if (v.analytic != v.search)
        throw InconsistencyError("analytic and search verdicts disagree for " + M.name());
    v.irreducible = v.analytic;
    return v;
}

CheckReport check_unique_submodule_iso(const std::optional<Rational>& alpha) {
    auto W0 = std::make_shared<ConformalAlgebra>(make_w(Rational(0)));
    auto M0 = make_rank_one_w(W0, {Rational(0), alpha, true, Rational(0)});
    auto M1 = make_rank_one_w(W0, {Rational(1), alpha, true, Rational(0)});

    CheckReport report{"unique-submodule-iso", M0.name() + " ~ " + M1.name(), {}};
    const auto& ctx = M0.context();
    auto pa = ExactPoly::variable(ctx, "pa");
    ExactPoly gen = pa + param_or_constant(ctx, "a", alpha);
    ModuleElement w{{gen}};

    for (GeneratorId g = 0; g < W0->rank(); ++g) {
        auto lhs = action(M0, M0.algebra().generator(g), w);
        // the M_{1,alpha,0} action on its free generator, applied to w
        ExactPoly q1 = M1.action_on(g, 0).coeffs[0].lift_to(ctx);
        ExactPoly residual = lhs.coeffs[0] - q1 * gen;
        if (!residual.is_zero())
            report.add("action of " + W0->generator_name(g)
                           + " on (pa+a)v",
                       std::move(residual));
    }
    return report;
}

CheckReport quotient_by_ideal_check() {
    auto SV = make_sv();
    auto W0 = make_w(Rational(0));
    auto Wh = make_w(make_rational(-1, 2));
    CheckReport report{"sv-structural-isos", "sv", {}};

    GeneratorId L = SV.generator_index("L");
    GeneratorId Y = SV.generator_index("Y");
    GeneratorId M = SV.generator_index("M");
    const auto& wctx = W0.context();

    // (i) span{L, M} closes and matches W(0) under L -> L, M -> H
    {
        const GeneratorId map_to_w[2] = {W0.generator_index("L"), W0.generator_index("H")};
        const GeneratorId pair_gens[2] = {L, M};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                const auto& e = SV.entry(pair_gens[x], pair_gens[y]);
                if (!e.coeffs[Y].is_zero())
                    report.add("sv-subalgebra(" + SV.generator_name(pair_gens[x]) + "," +
                                   SV.generator_name(pair_gens[y]) + ") leaks Y",
                               e.coeffs[Y]);
                const auto& we = W0.entry(map_to_w[x], map_to_w[y]);
                ExactPoly dl = e.coeffs[L].lift_to(wctx) - we.coeffs[0];
                ExactPoly dm = e.coeffs[M].lift_to(wctx) - we.coeffs[1];
                for (auto* d : {&dl, &dm})
                    if (!d->is_zero())
                        report.add("sv-subalgebra(" + SV.generator_name(pair_gens[x]) + "," +
                                       SV.generator_name(pair_gens[y]) + ") vs w:0",
                                   *d);
            }
    }

    // (ii) SV mod C[pa]M matches W(-1/2) under L -> L, Y -> H
    {
        const GeneratorId map_to_w[2] = {Wh.generator_index("L"), Wh.generator_index("H")};
        const GeneratorId pair_gens[2] = {L, Y};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                const auto& e = SV.entry(pair_gens[x], pair_gens[y]);
                const auto& we = Wh.entry(map_to_w[x], map_to_w[y]);
                // drop the M coordinate: it is the ideal
                ExactPoly dl = e.coeffs[L].lift_to(wctx) - we.coeffs[0];
                ExactPoly dy = e.coeffs[Y].lift_to(wctx) - we.coeffs[1];
                for (auto* d : {&dl, &dy})
                    if (!d->is_zero())
                        report.add("sv-quotient(" + SV.generator_name(pair_gens[x]) + "," +
                                       SV.generator_name(pair_gens[y]) + ") vs w:-1/2",
                                   *d);
            }
    }
    return report;
}

std::string str(const ConformalModule& M, const ModuleElement& w) {
    std::vector<std::string> pieces;
    for (std::size_t s = 0; s < w.coeffs.size(); ++s) {
        const auto& c = w.coeffs[s];
        if (c.is_zero())
            continue;
        std::string sym = M.basis_names()[s];
        if (auto r = c.as_rational()) {
            if (*r == 1)
                pieces.push_back(sym);
            else if (*r == -1)
                pieces.push_back("-" + sym);
            else
                pieces.push_back(to_string(*r) + "*" + sym);
        } else if (c.terms().size() == 1) {
            pieces.push_back(c.str() + "*" + sym);
        } else {
            pieces.push_back("(" + c.str() + ")*" + sym);
        }
    }
    if (pieces.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i == 0)
            out = pieces[i];
        else if (pieces[i][0] == '-')
            out += " - " + pieces[i].substr(1);
        else
            out += " + " + pieces[i];
    }
    return out;
}

} // namespace lieconf

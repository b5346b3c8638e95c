#include "lieconf/conformal.hpp"

#include <sstream>

namespace lieconf {

namespace {

void require_algebra_element(const ConformalAlgebra& A, const ConformalElement& e) {
    if (e.coeffs.size() != A.rank())
        throw ContextMismatchError("element does not match the algebra's generator basis");
    for (const auto& c : e.coeffs) {
        if (!c.context()->same_as(*A.context()))
            throw ContextMismatchError("element over a different variable context");
        if (c.depends_on(PolyContext::kLambda) || c.depends_on(PolyContext::kMu) ||
            c.depends_on(PolyContext::kNu))
            throw DomainError("conformal element coefficients must involve only pa and parameters");
    }
}

std::string join_signed(const std::vector<std::string>& pieces) {
    if (pieces.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string& p = pieces[i];
        if (i == 0)
            out = p;
        else if (!p.empty() && p[0] == '-')
            out += " - " + p.substr(1);
        else
            out += " + " + p;
    }
    return out;
}

std::string coeff_times(const ExactPoly& coeff, const std::string& symbol) {
    if (coeff.is_zero())
        return "";
    if (auto r = coeff.as_rational()) {
        if (*r == 1)
            return symbol;
        if (*r == -1)
            return "-" + symbol;
        return to_string(*r) + "*" + symbol;
    }
    if (coeff.terms().size() == 1)
        return coeff.str() + "*" + symbol;
    return "(" + coeff.str() + ")*" + symbol;
}

} // namespace

ConformalAlgebra::ConformalAlgebra(std::string name, ContextPtr ctx,
                                   std::vector<std::string> generators,
                                   std::vector<std::vector<LambdaElement>> table,
                                   std::map<std::string, Rational> pins, std::string family)
    : name_(std::move(name)), ctx_(std::move(ctx)), generators_(std::move(generators)),
      table_(std::move(table)), pins_(std::move(pins)), family_(std::move(family)) {
    const std::size_t k = generators_.size();
    if (table_.size() != k)
        throw DomainError("bracket table must cover every generator pair");
    for (const auto& row : table_) {
        if (row.size() != k)
            throw DomainError("bracket table must cover every generator pair");
        for (const auto& e : row) {
            if (e.coeffs.size() != k)
                throw DomainError("bracket table entry has wrong coordinate count");
            for (const auto& p : e.coeffs) {
                if (!p.context()->same_as(*ctx_))
                    throw ContextMismatchError("table entry over a different variable context");
                if (p.depends_on(PolyContext::kMu) || p.depends_on(PolyContext::kNu))
                    throw DomainError("table entries must be polynomials in pa, la only");
            }
        }
    }
    for (const auto& [param, value] : pins_) {
        (void)value;
        if (!ctx_->find(param))
            throw DomainError("pinned parameter '" + param + "' not in context");
    }
}

std::optional<GeneratorId> ConformalAlgebra::find_generator(std::string_view name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i] == name)
            return i;
    return std::nullopt;
}

GeneratorId ConformalAlgebra::generator_index(std::string_view name) const {
    if (auto i = find_generator(name))
        return *i;
    throw DomainError("unknown generator '" + std::string(name) + "'");
}

const LambdaElement& ConformalAlgebra::entry(GeneratorId i, GeneratorId j) const {
    return table_.at(i).at(j);
}

std::optional<Rational> ConformalAlgebra::pinned(std::string_view param) const {
    auto it = pins_.find(std::string(param));
    if (it == pins_.end())
        return std::nullopt;
    return it->second;
}

ConformalElement ConformalAlgebra::zero_element() const {
    return {std::vector<ExactPoly>(rank(), ExactPoly::zero(ctx_))};
}

ConformalElement ConformalAlgebra::generator(GeneratorId i) const {
    auto e = zero_element();
    e.coeffs.at(i) = ExactPoly::constant(ctx_, Rational(1));
    return e;
}

ConformalElement ConformalAlgebra::generator(std::string_view name) const {
    return generator(generator_index(name));
}

LambdaElement ConformalAlgebra::zero_lambda() const {
    return {std::vector<ExactPoly>(rank(), ExactPoly::zero(ctx_))};
}

ConformalElement add(const ConformalElement& a, const ConformalElement& b) {
    if (a.coeffs.size() != b.coeffs.size())
        throw ContextMismatchError("elements over different generator bases");
    ConformalElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] += b.coeffs[i];
    return out;
}

ConformalElement scale(const ExactPoly& f, const ConformalElement& a) {
    ConformalElement out = a;
    for (auto& c : out.coeffs)
        c = f * c;
    return out;
}

ConformalElement scale(const Rational& c, const ConformalElement& a) {
    ConformalElement out = a;
    for (auto& p : out.coeffs)
        p = p * c;
    return out;
}

LambdaElement add(const LambdaElement& a, const LambdaElement& b) {
    if (a.coeffs.size() != b.coeffs.size())
        throw ContextMismatchError("elements over different generator bases");
    LambdaElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] += b.coeffs[i];
    return out;
}

LambdaElement sub(const LambdaElement& a, const LambdaElement& b) {
    if (a.coeffs.size() != b.coeffs.size())
        throw ContextMismatchError("elements over different generator bases");
    LambdaElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] -= b.coeffs[i];
    return out;
}

LambdaElement scale(const ExactPoly& f, const LambdaElement& a) {
    LambdaElement out = a;
    for (auto& c : out.coeffs)
        c = f * c;
    return out;
}

bool equal(const LambdaElement& a, const LambdaElement& b) {
    if (a.coeffs.size() != b.coeffs.size())
        return false;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        if (!(a.coeffs[i] == b.coeffs[i]))
            return false;
    return true;
}

bool equal(const ConformalElement& a, const ConformalElement& b) {
    if (a.coeffs.size() != b.coeffs.size())
        return false;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        if (!(a.coeffs[i] == b.coeffs[i]))
            return false;
    return true;
}

bool is_zero(const ConformalElement& a) {
    for (const auto& c : a.coeffs)
        if (!c.is_zero())
            return false;
    return true;
}

LambdaElement bracket(const ConformalAlgebra& A, const ConformalElement& a,
                      const ConformalElement& b) {
    require_algebra_element(A, a);
    require_algebra_element(A, b);
    const auto& ctx = A.context();
    auto la = ExactPoly::variable(ctx, "la");
    auto pa_plus_la = ExactPoly::variable(ctx, "pa") + la;

    LambdaElement out = A.zero_lambda();
    for (std::size_t i = 0; i < A.rank(); ++i) {
        if (a.coeffs[i].is_zero())
            continue;
        ExactPoly fi = a.coeffs[i].substitute(PolyContext::kPartial, -la);
        for (std::size_t j = 0; j < A.rank(); ++j) {
            if (b.coeffs[j].is_zero())
                continue;
            ExactPoly factor = fi * b.coeffs[j].substitute(PolyContext::kPartial, pa_plus_la);
            const LambdaElement& entry = A.entry(i, j);
            for (std::size_t k = 0; k < A.rank(); ++k)
                if (!entry.coeffs[k].is_zero())
                    out.coeffs[k] += factor * entry.coeffs[k];
        }
    }
    return out;
}

CheckReport check_skew(const ConformalAlgebra& A) {
    CheckReport report{"skew", A.name(), {}};
    const auto& ctx = A.context();
    auto minus_la_pa = -ExactPoly::variable(ctx, "la") - ExactPoly::variable(ctx, "pa");
    for (GeneratorId i = 0; i < A.rank(); ++i) {
        for (GeneratorId j = i; j < A.rank(); ++j) {
            const auto& fwd = A.entry(i, j);
            const auto& rev = A.entry(j, i);
            for (std::size_t k = 0; k < A.rank(); ++k) {
                ExactPoly residual =
                    fwd.coeffs[k] + rev.coeffs[k].substitute(PolyContext::kLambda, minus_la_pa);
                if (!residual.is_zero())
                    report.add("skew(" + A.generator_name(i) + "," + A.generator_name(j) + ") @ " +
                                   A.generator_name(k),
                               std::move(residual));
            }
        }
    }
    return report;
}

CheckReport check_jacobi(const ConformalAlgebra& A) {
    CheckReport report{"jacobi", A.name(), {}};
    const auto& ctx = A.context();
    auto la = ExactPoly::variable(ctx, "la");
    auto mu = ExactPoly::variable(ctx, "mu");
    auto nu = ExactPoly::variable(ctx, "nu");
    auto pa = ExactPoly::variable(ctx, "pa");

    for (GeneratorId ai = 0; ai < A.rank(); ++ai) {
        for (GeneratorId bi = 0; bi < A.rank(); ++bi) {
            for (GeneratorId ci = 0; ci < A.rank(); ++ci) {
                auto residual = A.zero_lambda();

                // [a la [b mu c]]
                const auto& inner_bc = A.entry(bi, ci);
                for (std::size_t m = 0; m < A.rank(); ++m) {
                    if (inner_bc.coeffs[m].is_zero())
                        continue;
                    ExactPoly pm = inner_bc.coeffs[m]
                                       .substitute(PolyContext::kLambda, mu)
                                       .substitute(PolyContext::kPartial, pa + la);
                    const auto& outer = A.entry(ai, m);
                    for (std::size_t k = 0; k < A.rank(); ++k)
                        residual.coeffs[k] += pm * outer.coeffs[k];
                }

                // [[a la b] la+mu c]: the inner bracket's lambda slot goes
                // through a fresh nu to dodge capture, then nu -> la+mu.
                const auto& inner_ab = A.entry(ai, bi);
                for (std::size_t m = 0; m < A.rank(); ++m) {
                    if (inner_ab.coeffs[m].is_zero())
                        continue;
                    ExactPoly qm = inner_ab.coeffs[m].substitute(PolyContext::kPartial, -nu);
                    const auto& outer = A.entry(m, ci);
                    for (std::size_t k = 0; k < A.rank(); ++k) {
                        if (outer.coeffs[k].is_zero())
                            continue;
                        ExactPoly piece = qm * outer.coeffs[k].substitute(PolyContext::kLambda, nu);
                        residual.coeffs[k] -= piece.substitute(PolyContext::kNu, la + mu);
                    }
                }

                // [b mu [a la c]]
                const auto& inner_ac = A.entry(ai, ci);
                for (std::size_t m = 0; m < A.rank(); ++m) {
                    if (inner_ac.coeffs[m].is_zero())
                        continue;
                    ExactPoly rm = inner_ac.coeffs[m].substitute(PolyContext::kPartial, pa + mu);
                    const auto& outer = A.entry(bi, m);
                    for (std::size_t k = 0; k < A.rank(); ++k)
                        residual.coeffs[k] -=
                            rm * outer.coeffs[k].substitute(PolyContext::kLambda, mu);
                }

                for (std::size_t k = 0; k < A.rank(); ++k)
                    if (!residual.coeffs[k].is_zero())
                        report.add("jacobi(" + A.generator_name(ai) + "," + A.generator_name(bi) +
                                       "," + A.generator_name(ci) + ") @ " + A.generator_name(k),
                                   residual.coeffs[k]);
            }
        }
    }
    return report;
}

ConformalElement j_product(const ConformalAlgebra& A, const ConformalElement& a,
                           const ConformalElement& b, unsigned j) {
    LambdaElement br = bracket(A, a, b);
    ConformalElement out = A.zero_element();
    Rational jfac(factorial(j));
    for (std::size_t k = 0; k < A.rank(); ++k)
        out.coeffs[k] = br.coeffs[k].coeff_of(PolyContext::kLambda, j) * jfac;
    return out;
}

unsigned locality_bound(const ConformalAlgebra& A, GeneratorId i, GeneratorId j) {
    const auto& e = A.entry(i, j);
    if (e.is_zero())
        return 0;
    unsigned deg = 0;
    for (const auto& c : e.coeffs)
        deg = std::max(deg, c.degree_in(PolyContext::kLambda));
    return deg + 1;
}

unsigned locality_bound(const ConformalAlgebra& A) {
    unsigned n = 0;
    for (GeneratorId i = 0; i < A.rank(); ++i)
        for (GeneratorId j = 0; j < A.rank(); ++j)
            n = std::max(n, locality_bound(A, i, j));
    return n;
}

CheckReport check_j_product_axioms(const ConformalAlgebra& A, unsigned n_max) {
    if (n_max < locality_bound(A))
        throw DomainError("n_max is below the locality bound of the bracket table");
    CheckReport report{"jproducts", A.name(), {}};
    const auto& ctx = A.context();
    auto pa = ExactPoly::variable(ctx, "pa");

    for (GeneratorId i = 0; i < A.rank(); ++i) {
        for (GeneratorId j = 0; j < A.rank(); ++j) {
            auto a = A.generator(i);
            auto b = A.generator(j);
            auto pa_a = scale(pa, a);
            std::string pair = "(" + A.generator_name(i) + "," + A.generator_name(j) + ")";
            for (unsigned n = 0; n <= n_max; ++n) {
                // (pa a)_(n) b = -n a_(n-1) b
                auto lhs = j_product(A, pa_a, b, n);
                auto rhs = n == 0 ? A.zero_element()
                                  : scale(Rational(-long(n)), j_product(A, a, b, n - 1));
                for (std::size_t k = 0; k < A.rank(); ++k) {
                    ExactPoly res = lhs.coeffs[k] - rhs.coeffs[k];
                    if (!res.is_zero())
                        report.add("jprod-derivation" + pair + " n=" + std::to_string(n) + " @ " +
                                       A.generator_name(k),
                                   std::move(res));
                }

                // a_(n) b = sum_jj (-1)^(n+jj+1) pa^jj/jj! b_(n+jj) a
                auto lhs3 = j_product(A, a, b, n);
                auto rhs3 = A.zero_element();
                unsigned stop = locality_bound(A, j, i);
                for (unsigned jj = 0; n + jj < stop; ++jj) {
                    Rational coeff((n + jj + 1) % 2 == 0 ? 1 : -1);
                    coeff /= Rational(factorial(jj));
                    rhs3 = add(rhs3, scale(pa.pow(jj) * coeff, j_product(A, b, a, n + jj)));
                }
                for (std::size_t k = 0; k < A.rank(); ++k) {
                    ExactPoly res = lhs3.coeffs[k] - rhs3.coeffs[k];
                    if (!res.is_zero())
                        report.add("jprod-skew" + pair + " n=" + std::to_string(n) + " @ " +
                                       A.generator_name(k),
                                   std::move(res));
                }

                // locality: vanishing beyond the la-degree of the entry
                if (n >= locality_bound(A, i, j)) {
                    auto v = j_product(A, a, b, n);
                    for (std::size_t k = 0; k < A.rank(); ++k)
                        if (!v.coeffs[k].is_zero())
                            report.add("jprod-locality" + pair + " n=" + std::to_string(n) +
                                           " @ " + A.generator_name(k),
                                       v.coeffs[k]);
                }
            }
        }
    }
    return report;
}

namespace {

LambdaElement lambda_entry(const ContextPtr& ctx, std::size_t rank, std::size_t target,
                           const ExactPoly& coeff) {
    LambdaElement e{std::vector<ExactPoly>(rank, ExactPoly::zero(ctx))};
    e.coeffs.at(target) = coeff;
    return e;
}

LambdaElement skew_image(const ContextPtr& ctx, const LambdaElement& e) {
    auto minus_la_pa = -ExactPoly::variable(ctx, "la") - ExactPoly::variable(ctx, "pa");
    LambdaElement out = e;
    for (auto& c : out.coeffs)
        c = -c.substitute(PolyContext::kLambda, minus_la_pa);
    return out;
}

ConformalAlgebra make_w_impl(std::optional<Rational> pin, std::string name) {
    auto ctx = PolyContext::make({"b"});
    auto pa = ExactPoly::variable(ctx, "pa");
    auto la = ExactPoly::variable(ctx, "la");
    auto b = ExactPoly::variable(ctx, "b");
    auto one = ExactPoly::constant(ctx, Rational(1));

    auto lh = pa + (one - b) * la;
    if (pin)
        lh = lh.substitute("b", ExactPoly::constant(ctx, *pin));

    // [H la L] is the skew image of [L la H]; [H la H] = 0.
    LambdaElement e_ll = lambda_entry(ctx, 2, 0, pa + la * Rational(2));
    LambdaElement e_lh = lambda_entry(ctx, 2, 1, lh);
    LambdaElement e_hl = skew_image(ctx, e_lh);
    LambdaElement e_hh{std::vector<ExactPoly>(2, ExactPoly::zero(ctx))};

    std::vector<std::vector<LambdaElement>> table{{e_ll, e_lh}, {e_hl, e_hh}};
    std::map<std::string, Rational> pins;
    if (pin)
        pins.emplace("b", *pin);
    return ConformalAlgebra(std::move(name), ctx, {"L", "H"}, std::move(table), std::move(pins),
                            "w");
}

} // namespace

ConformalAlgebra make_virasoro() {
    auto ctx = PolyContext::make();
    auto pa = ExactPoly::variable(ctx, "pa");
    auto la = ExactPoly::variable(ctx, "la");
    std::vector<std::vector<LambdaElement>> table{{lambda_entry(ctx, 1, 0, pa + la * Rational(2))}};
    return ConformalAlgebra("vir", ctx, {"L"}, std::move(table), {}, "w");
}

ConformalAlgebra make_w() {
    return make_w_impl(std::nullopt, "w:b");
}

ConformalAlgebra make_w(const Rational& b) {
    return make_w_impl(b, "w:" + to_string(b));
}

ConformalAlgebra make_hv() {
    return make_w_impl(Rational(0), "hv");
}

ConformalAlgebra make_w22() {
    return make_w_impl(Rational(-1), "w22");
}

ConformalAlgebra make_sv() {
    auto ctx = PolyContext::make();
    auto pa = ExactPoly::variable(ctx, "pa");
    auto la = ExactPoly::variable(ctx, "la");

    // Generators L=0, Y=1, M=2. Both orders of every nontrivial bracket are
    // written out as displayed, so check_skew genuinely cross-checks the two
    // (L,Y) formulas instead of deriving one from the other.
    auto e = [&](std::size_t target, const ExactPoly& coeff) {
        return lambda_entry(ctx, 3, target, coeff);
    };
    LambdaElement zero_e{std::vector<ExactPoly>(3, ExactPoly::zero(ctx))};

    auto t_ll = e(0, pa + la * Rational(2));
    auto t_ly = e(1, pa + la * make_rational(3, 2));
    auto t_yl = e(1, pa * make_rational(1, 2) + la * make_rational(3, 2));
    auto t_yy = e(2, pa + la * Rational(2));
    auto t_lm = e(2, pa + la);
    auto t_ml = e(2, la);

    std::vector<std::vector<LambdaElement>> table{
        {t_ll, t_ly, t_lm}, {t_yl, t_yy, zero_e}, {t_ml, zero_e, zero_e}};
    return ConformalAlgebra("sv", ctx, {"L", "Y", "M"}, std::move(table), {}, "sv");
}

std::optional<ConformalAlgebra> builtin_algebra(std::string_view selector) {
    if (selector == "vir")
        return make_virasoro();
    if (selector == "hv")
        return make_hv();
    if (selector == "w22")
        return make_w22();
    if (selector == "sv")
        return make_sv();
    if (selector.rfind("w:", 0) == 0) {
        std::string_view arg = selector.substr(2);
        if (arg == "b")
            return make_w();
        try {
            return make_w(rational_from_string(arg));
        } catch (const DomainError&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::string str(const ConformalAlgebra& A, const LambdaElement& e) {
    std::vector<std::string> pieces;
    for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
        auto piece = coeff_times(e.coeffs[k], A.generator_name(k));
        if (!piece.empty())
            pieces.push_back(std::move(piece));
    }
    return join_signed(pieces);
}

std::string str(const ConformalAlgebra& A, const ConformalElement& e) {
    std::vector<std::string> pieces;
    for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
        auto piece = coeff_times(e.coeffs[k], A.generator_name(k));
        if (!piece.empty())
            pieces.push_back(std::move(piece));
    }
    return join_signed(pieces);
}

} // namespace lieconf

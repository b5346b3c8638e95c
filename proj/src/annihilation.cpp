#include "lieconf/annihilation.hpp"

#include <algorithm>
#include <sstream>

namespace lieconf {

namespace {

void require_param_only(const ExactPoly& p, const char* what) {
    if (p.depends_on_any_formal())
        throw DomainError(std::string(what) + " must be a parameter-only polynomial");
}

std::string display_str(const Rational& d) {
    return to_string(d);
}

} // namespace

bool AnnElement::is_zero() const {
    return del.is_zero() && terms.empty();
}

void AnnElement::add_term(const AnnBasisElt& e, const ExactPoly& c) {
    if (c.is_zero())
        return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms.erase(it);
}

bool equal(const AnnElement& a, const AnnElement& b) {
    if (!(a.del == b.del) || a.terms.size() != b.terms.size())
        return false;
    for (auto ia = a.terms.begin(), ib = b.terms.begin(); ia != a.terms.end(); ++ia, ++ib)
        if (ia->first != ib->first || !(ia->second == ib->second))
            return false;
    return true;
}

AnnElement add(const AnnElement& a, const AnnElement& b) {
    AnnElement out = a;
    out.del += b.del;
    for (const auto& [e, c] : b.terms)
        out.add_term(e, c);
    return out;
}

AnnElement scale(const ExactPoly& c, const AnnElement& a) {
    AnnElement out(c.context());
    out.del = c * a.del;
    for (const auto& [e, p] : a.terms)
        out.add_term(e, c * p);
    return out;
}

AnnElement scale(const Rational& c, const AnnElement& a) {
    return scale(ExactPoly::constant(a.del.context(), c), a);
}

std::vector<Rational> AnnAlgebra::default_shifts(const ConformalAlgebra& A) {
    std::vector<Rational> shifts;
    for (const auto& name : A.generator_names()) {
        if (name == "L")
            shifts.push_back(Rational(1));
        else if (name == "Y")
            shifts.push_back(make_rational(1, 2));
        else
            shifts.push_back(Rational(0));
    }
    return shifts;
}

AnnAlgebra::AnnAlgebra(AlgebraPtr source) : AnnAlgebra(source, default_shifts(*source)) {}

AnnAlgebra::AnnAlgebra(AlgebraPtr source, std::vector<Rational> shifts)
    : source_(std::move(source)), shifts_(std::move(shifts)) {
    if (!source_)
        throw DomainError("annihilation algebra needs a source algebra");
    if (shifts_.size() != source_->rank())
        throw DomainError("one shift per generator required");
    for (const auto& s : shifts_)
        if (s.get_den() != 1 && s.get_den() != 2)
            throw DomainError("shifts must be integers or half-integers");

    const std::size_t k = source_->rank();
    jtab_.resize(k);
    for (GeneratorId i = 0; i < k; ++i) {
        jtab_[i].reserve(k);
        for (GeneratorId j = 0; j < k; ++j) {
            std::vector<ConformalElement> products;
            unsigned bound = locality_bound(*source_, i, j);
            for (unsigned n = 0; n < bound; ++n)
                products.push_back(j_product(*source_, source_->generator(i),
                                             source_->generator(j), n));
            jtab_[i].push_back(std::move(products));
        }
    }
}

Rational AnnAlgebra::display_index(const AnnBasisElt& e) const {
    return Rational(e.raw) - shift(e.gen);
}

long AnnAlgebra::layer(const AnnBasisElt& e) const {
    Rational d = display_index(e);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), d.get_num_mpz_t(), d.get_den_mpz_t());
    return q.get_si();
}

AnnBasisElt AnnAlgebra::at_display(GeneratorId g, const Rational& display) const {
    Rational raw = display + shift(g);
    if (!is_integer(raw) || raw < 0)
        throw DomainError("display index " + to_string(display) + " has no basis symbol for " +
                          source_->generator_name(g));
    return AnnBasisElt{g, static_cast<unsigned>(raw.get_num().get_ui())};
}

AnnElement AnnAlgebra::basis(GeneratorId g, unsigned raw) const {
    if (g >= source_->rank())
        throw DomainError("generator index out of range");
    AnnElement e(context());
    e.add_term({g, raw}, ExactPoly::constant(context(), Rational(1)));
    return e;
}

AnnElement AnnAlgebra::partial() const {
    AnnElement e(context());
    e.del = ExactPoly::constant(context(), Rational(1));
    return e;
}

const ConformalElement& AnnAlgebra::j_table(GeneratorId i, GeneratorId j, unsigned n) const {
    return jtab_.at(i).at(j).at(n);
}

unsigned AnnAlgebra::j_table_size(GeneratorId i, GeneratorId j) const {
    return static_cast<unsigned>(jtab_.at(i).at(j).size());
}

namespace {

/// Adds coeff * (f(pa) g)_(d) to out, rewriting pa-powers through
/// (pa a)_(d) = -d a_(d-1): a pa^e term lands on raw degree d-e with the
/// factor (-1)^e d(d-1)...(d-e+1).
void lower_into(const AnnAlgebra& A, AnnElement& out, const ConformalElement& elem, unsigned d,
                const ExactPoly& coeff) {
    const auto& ctx = A.context();
    for (GeneratorId g = 0; g < elem.coeffs.size(); ++g) {
        const ExactPoly& p = elem.coeffs[g];
        for (const auto& term : p.terms()) {
            unsigned e = term.mono[PolyContext::kPartial];
            if (e > d)
                continue; // falling factorial vanishes
            Integer fall = falling_factorial(d, e);
            if (fall == 0)
                continue;
            Rational scalar(fall * (e % 2 == 0 ? 1 : -1));
            Exponents params = term.mono;
            params[PolyContext::kPartial] = 0;
            ExactPoly c = ExactPoly::monomial(ctx, std::move(params), term.coeff * scalar) * coeff;
            out.add_term({g, d - e}, c);
        }
    }
}

} // namespace

AnnElement ann_bracket(const AnnAlgebra& A, const AnnElement& x, const AnnElement& y) {
    const auto& ctx = A.context();
    AnnElement out(ctx);
    require_param_only(x.del, "ann element coefficient");
    require_param_only(y.del, "ann element coefficient");

    // [pa, b_(n)] = -n b_(n-1) and [a_(m), pa] = m a_(m-1)
    if (!x.del.is_zero())
        for (const auto& [e, c] : y.terms) {
            require_param_only(c, "ann element coefficient");
            if (e.raw > 0)
                out.add_term({e.gen, e.raw - 1}, x.del * c * Rational(-long(e.raw)));
        }
    if (!y.del.is_zero())
        for (const auto& [e, c] : x.terms) {
            if (e.raw > 0)
                out.add_term({e.gen, e.raw - 1}, y.del * c * Rational(long(e.raw)));
        }

    for (const auto& [e1, c1] : x.terms) {
        require_param_only(c1, "ann element coefficient");
        for (const auto& [e2, c2] : y.terms) {
            require_param_only(c2, "ann element coefficient");
            unsigned m = e1.raw, n = e2.raw;
            unsigned bound = A.j_table_size(e1.gen, e2.gen);
            ExactPoly cc = c1 * c2;
            for (unsigned j = 0; j <= m && j < bound; ++j) {
                ExactPoly coeff = cc * Rational(binomial(m, j));
                lower_into(A, out, A.j_table(e1.gen, e2.gen, j), m + n - j, coeff);
            }
        }
    }
    return out;
}

std::optional<AnnElement> closed_form_bracket(const AnnAlgebra& A, const AnnBasisElt& x,
                                              const AnnBasisElt& y) {
    const auto& alg = A.source();
    const auto& ctx = A.context();
    if (alg.family() != "w" && alg.family() != "sv")
        return std::nullopt;

    const std::string& gx = alg.generator_name(x.gen);
    const std::string& gy = alg.generator_name(y.gen);
    Rational dm = A.display_index(x);
    Rational dn = A.display_index(y);

    auto b_poly = [&]() {
        if (auto pin = alg.pinned("b"))
            return ExactPoly::constant(ctx, *pin);
        return ExactPoly::variable(ctx, "b");
    };
    auto result = [&](GeneratorId g, const ExactPoly& coeff, const Rational& display) {
        AnnElement out(ctx);
        if (!coeff.is_zero())
            out.add_term(A.at_display(g, display), coeff);
        return out;
    };
    auto constant = [&](const Rational& c) { return ExactPoly::constant(ctx, c); };

    if (alg.family() == "w") {
        if (gx == "L" && gy == "L")
            return result(x.gen, constant(dm - dn), dm + dn);
        if (gx == "L" && gy == "H")
            return result(y.gen, -(b_poly() * (dm + 1) + constant(dn)), dm + dn);
        if (gx == "H" && gy == "L")
            return result(x.gen, b_poly() * (dn + 1) + constant(dm), dm + dn);
        if (gx == "H" && gy == "H")
            return AnnElement(ctx);
        return std::nullopt;
    }

    // sv
    if (gx == "L" && gy == "L")
        return result(x.gen, constant(dm - dn), dm + dn);
    if (gx == "L" && gy == "M")
        return result(y.gen, constant(-dn), dm + dn);
    if (gx == "M" && gy == "L")
        return result(x.gen, constant(dm), dm + dn);
    if (gx == "L" && gy == "Y")
        return result(y.gen, constant(dm / 2 - dn), dm + dn);
    if (gx == "Y" && gy == "L")
        return result(x.gen, constant(dm - dn / 2), dm + dn);
    if (gx == "Y" && gy == "Y")
        return result(A.source().generator_index("M"), constant(dm - dn), dm + dn);
    if ((gx == "M" && gy == "M") || (gx == "M" && gy == "Y") || (gx == "Y" && gy == "M"))
        return AnnElement(ctx);
    return std::nullopt;
}

namespace {

std::vector<AnnBasisElt> enumerate_basis_by_display(const AnnAlgebra& A, long N) {
    std::vector<AnnBasisElt> out;
    for (GeneratorId g = 0; g < A.source().rank(); ++g)
        for (unsigned raw = 0;; ++raw) {
            AnnBasisElt e{g, raw};
            if (A.display_index(e) > Rational(N))
                break;
            out.push_back(e);
        }
    return out;
}

} // namespace

CheckReport verify_presentation(const AnnAlgebra& A, long N) {
    if (N < 2)
        throw DomainError("verify_presentation needs N >= 2");
    CheckReport report{"ann-presentation", A.source().name(), {}};
    auto basis = enumerate_basis_by_display(A, N);

    for (const auto& e1 : basis) {
        for (const auto& e2 : basis) {
            auto expected = closed_form_bracket(A, e1, e2);
            if (!expected)
                throw DomainError("no closed-form presentation for algebra '" +
                                  A.source().name() + "'");
            auto got = ann_bracket(A, A.basis(e1), A.basis(e2));
            auto diff = add(got, scale(Rational(-1), *expected));
            if (!diff.is_zero()) {
                ExactPoly residual = diff.del;
                if (residual.is_zero())
                    residual = diff.terms.begin()->second;
                report.add("ann[" + str(A, e1) + "," + str(A, e2) + "]", std::move(residual));
            }
        }
    }

    // pa lowers display indices: [pa, a_d] = -(d + shift) a_{d-1}
    auto pa = A.partial();
    for (const auto& e : basis) {
        auto got = ann_bracket(A, pa, A.basis(e));
        AnnElement expected(A.context());
        Rational factor = -(A.display_index(e) + A.shift(e.gen));
        if (e.raw > 0 && factor != 0)
            expected.add_term({e.gen, e.raw - 1}, ExactPoly::constant(A.context(), factor));
        auto diff = add(got, scale(Rational(-1), expected));
        if (!diff.is_zero())
            report.add("ann[pa," + str(A, e) + "]", diff.terms.begin()->second);
    }
    return report;
}

bool is_central(const AnnAlgebra& A, const AnnElement& x, long N) {
    if (!ann_bracket(A, x, A.partial()).is_zero())
        return false;
    for (GeneratorId g = 0; g < A.source().rank(); ++g)
        for (unsigned raw = 0; long(raw) <= N; ++raw)
            if (!ann_bracket(A, x, A.basis(g, raw)).is_zero())
                return false;
    return true;
}

namespace {

struct Eliminator {
    // Fraction-free Gauss-Jordan over parameter polynomials: rows are scaled
    // by pivot entries, which is membership-preserving for generic parameter
    // values (pivots are nonzero polynomials).
    static void content_normalize(std::vector<ExactPoly>& row) {
        Integer num_gcd(0), den_lcm(1);
        for (const auto& p : row)
            for (const auto& t : p.terms()) {
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
            }
        if (num_gcd == 0)
            return;
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        for (auto& p : row)
            p = p * scale;
    }

    static void reduce(std::vector<std::vector<ExactPoly>>& rows) {
        if (rows.empty())
            return;
        const std::size_t ncols = rows[0].size();
        std::size_t next = 0;
        for (std::size_t col = 0; col < ncols && next < rows.size(); ++col) {
            // prefer a constant pivot to keep entries small
            std::size_t pivot = rows.size();
            for (std::size_t i = next; i < rows.size(); ++i)
                if (!rows[i][col].is_zero()) {
                    if (rows[i][col].as_rational()) {
                        pivot = i;
                        break;
                    }
                    if (pivot == rows.size())
                        pivot = i;
                }
            if (pivot == rows.size())
                continue;
            std::swap(rows[next], rows[pivot]);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == next || rows[i][col].is_zero())
                    continue;
                ExactPoly a = rows[next][col];
                ExactPoly b = rows[i][col];
                for (std::size_t c = 0; c < ncols; ++c)
                    rows[i][c] = a * rows[i][c] - b * rows[next][c];
                content_normalize(rows[i]);
            }
            content_normalize(rows[next]);
            ++next;
        }
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const std::vector<ExactPoly>& r) {
                                      return std::all_of(r.begin(), r.end(),
                                                         [](const ExactPoly& p) {
                                                             return p.is_zero();
                                                         });
                                  }),
                   rows.end());
    }

    /// Reduces v against the echelon rows; zero leftover means membership
    /// (for generic parameter values).
    static bool contains(const std::vector<std::vector<ExactPoly>>& rows,
                         std::vector<ExactPoly> v) {
        if (v.empty())
            return true;
        const std::size_t ncols = v.size();
        for (const auto& row : rows) {
            std::size_t lead = ncols;
            for (std::size_t c = 0; c < ncols; ++c)
                if (!row[c].is_zero()) {
                    lead = c;
                    break;
                }
            if (lead == ncols || v[lead].is_zero())
                continue;
            ExactPoly a = row[lead];
            ExactPoly b = v[lead];
            for (std::size_t c = 0; c < ncols; ++c)
                v[c] = a * v[c] - b * row[c];
        }
        return std::all_of(v.begin(), v.end(), [](const ExactPoly& p) { return p.is_zero(); });
    }
};

std::vector<AnnBasisElt> ambient_basis(const AnnAlgebra& A, long N) {
    std::vector<AnnBasisElt> out;
    for (GeneratorId g = 0; g < A.source().rank(); ++g)
        for (unsigned raw = 0;; ++raw) {
            AnnBasisElt e{g, raw};
            if (A.layer(e) > N)
                break;
            out.push_back(e);
        }
    return out;
}

std::vector<ExactPoly> to_row(const AnnAlgebra& A, const TruncatedSubspace& S,
                              const AnnElement& x) {
    if (!x.del.is_zero())
        throw DomainError("truncated subspaces span basis symbols only, not pa");
    std::vector<ExactPoly> row(S.ambient.size(), ExactPoly::zero(A.context()));
    for (const auto& [e, c] : x.terms) {
        if (A.layer(e) > S.trunc)
            continue; // modulo truncation
        auto it = std::lower_bound(S.ambient.begin(), S.ambient.end(), e);
        if (it == S.ambient.end() || *it != e)
            throw DomainError("element outside the ambient truncated basis");
        row[std::size_t(it - S.ambient.begin())] = c;
    }
    return row;
}

AnnElement from_row(const AnnAlgebra& A, const TruncatedSubspace& S,
                    const std::vector<ExactPoly>& row) {
    AnnElement x(A.context());
    for (std::size_t c = 0; c < row.size(); ++c)
        x.add_term(S.ambient[c], row[c]);
    return x;
}

} // namespace

TruncatedSubspace filtration(const AnnAlgebra& A, long n, long N) {
    if (n < -1)
        throw DomainError("filtration index must be >= -1");
    TruncatedSubspace S{N, ambient_basis(A, N), {}};
    for (std::size_t c = 0; c < S.ambient.size(); ++c) {
        if (A.layer(S.ambient[c]) < n)
            continue;
        std::vector<ExactPoly> row(S.ambient.size(), ExactPoly::zero(A.context()));
        row[c] = ExactPoly::constant(A.context(), Rational(1));
        S.rows.push_back(std::move(row));
    }
    return S;
}

TruncatedSubspace span_of(const AnnAlgebra& A, const std::vector<AnnElement>& elems, long N) {
    TruncatedSubspace S{N, ambient_basis(A, N), {}};
    for (const auto& x : elems)
        S.rows.push_back(to_row(A, S, x));
    Eliminator::reduce(S.rows);
    return S;
}

bool subspace_contains(const TruncatedSubspace& S, const AnnElement& x) {
    std::vector<ExactPoly> v(S.ambient.size(),
                             ExactPoly::zero(x.del.context()));
    for (const auto& [e, c] : x.terms) {
        auto it = std::lower_bound(S.ambient.begin(), S.ambient.end(), e);
        if (it == S.ambient.end() || *it != e)
            return false; // sticks out of the ambient window
        v[std::size_t(it - S.ambient.begin())] = c;
    }
    if (!x.del.is_zero())
        return false;
    return Eliminator::contains(S.rows, std::move(v));
}

bool subspace_contains(const TruncatedSubspace& S, const TruncatedSubspace& T) {
    if (S.ambient != T.ambient)
        throw DomainError("subspaces over different truncations");
    for (const auto& row : T.rows)
        if (!Eliminator::contains(S.rows, row))
            return false;
    return true;
}

bool subspace_equal(const TruncatedSubspace& S, const TruncatedSubspace& T) {
    return subspace_contains(S, T) && subspace_contains(T, S);
}

std::vector<TruncatedSubspace> derived_series(const AnnAlgebra& A, const TruncatedSubspace& S,
                                              unsigned steps) {
    std::vector<TruncatedSubspace> chain{S};
    Eliminator::reduce(chain[0].rows);

    // closure check: [S, S] must stay inside S modulo truncation
    {
        std::vector<AnnElement> elems;
        for (const auto& row : chain[0].rows)
            elems.push_back(from_row(A, chain[0], row));
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = i + 1; j < elems.size(); ++j) {
                AnnElement br = ann_bracket(A, elems[i], elems[j]);
                AnnElement trunc(A.context());
                for (const auto& [e, c] : br.terms)
                    if (A.layer(e) <= S.trunc)
                        trunc.add_term(e, c);
                if (!subspace_contains(chain[0], trunc))
                    throw ClosureError("seed subspace is not closed under the bracket");
            }
    }

    for (unsigned k = 0; k < steps; ++k) {
        const TruncatedSubspace& cur = chain.back();
        std::vector<AnnElement> elems;
        for (const auto& row : cur.rows)
            elems.push_back(from_row(A, cur, row));
        std::vector<AnnElement> brackets;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = i + 1; j < elems.size(); ++j) {
                AnnElement br = ann_bracket(A, elems[i], elems[j]);
                AnnElement trunc(A.context());
                for (const auto& [e, c] : br.terms)
                    if (A.layer(e) <= cur.trunc)
                        trunc.add_term(e, c);
                if (!trunc.is_zero())
                    brackets.push_back(std::move(trunc));
            }
        chain.push_back(span_of(A, brackets, cur.trunc));
    }
    return chain;
}

SolvabilityResult is_solvable_quotient(const AnnAlgebra& A, long N) {
    if (N < 1)
        throw DomainError("is_solvable_quotient needs N >= 1");
    // elements of layer >= N are zero in L_0/L_N, so truncate at N-1
    TruncatedSubspace seed = filtration(A, 0, N - 1);
    SolvabilityResult result{false, 0, true, true};

    std::vector<TruncatedSubspace> chain{seed};
    for (unsigned k = 1;; ++k) {
        auto next = derived_series(A, chain.back(), 1).back();
        chain.push_back(next);
        if (next.empty()) {
            result.solvable = true;
            result.derived_length = k;
            break;
        }
        if (subspace_equal(next, chain[chain.size() - 2])) {
            result.solvable = false;
            result.derived_length = k;
            break;
        }
    }

    for (std::size_t k = 1; k < chain.size(); ++k) {
        auto single = filtration(A, std::min<long>(long(k), N), N - 1);
        auto dbl = filtration(A, std::min<long>(long(k / 2), N), N - 1);
        if (!subspace_contains(single, chain[k]))
            result.nests_single = false;
        if (!subspace_contains(dbl, chain[k]))
            result.nests_double = false;
    }
    return result;
}

std::string str(const AnnAlgebra& A, const AnnBasisElt& e) {
    return A.source().generator_name(e.gen) + "(" + display_str(A.display_index(e)) + ")";
}

std::string str(const AnnAlgebra& A, const AnnElement& x) {
    std::vector<std::string> pieces;
    auto piece = [&](const ExactPoly& coeff, const std::string& symbol) {
        if (coeff.is_zero())
            return std::string();
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
    };
    for (const auto& [e, c] : x.terms) {
        auto p = piece(c, str(A, e));
        if (!p.empty())
            pieces.push_back(std::move(p));
    }
    if (auto p = piece(x.del, "pa"); !p.empty())
        pieces.push_back(std::move(p));

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

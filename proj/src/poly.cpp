#include "lieconf/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace lieconf {

bool mono_less(const Exponents& a, const Exponents& b) {
    unsigned long da = std::accumulate(a.begin(), a.end(), 0ul);
    unsigned long db = std::accumulate(b.begin(), b.end(), 0ul);
    if (da != db)
        return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

struct MonoLess {
    bool operator()(const Exponents& a, const Exponents& b) const { return mono_less(a, b); }
};

} // namespace

void require_same_context(const ExactPoly& p, const ExactPoly& q) {
    if (!p.context()->same_as(*q.context()))
        throw ContextMismatchError("polynomials over incompatible variable contexts");
}

ExactPoly ExactPoly::zero(ContextPtr ctx) {
    return ExactPoly(std::move(ctx), {});
}

ExactPoly ExactPoly::constant(ContextPtr ctx, Rational value) {
    if (value == 0)
        return zero(std::move(ctx));
    Exponents mono(ctx->size(), 0);
    std::vector<Term> terms{{std::move(mono), std::move(value)}};
    return ExactPoly(std::move(ctx), std::move(terms));
}

ExactPoly ExactPoly::variable(ContextPtr ctx, std::string_view name) {
    std::size_t i = ctx->index_of(name);
    Exponents mono(ctx->size(), 0);
    mono[i] = 1;
    std::vector<Term> terms{{std::move(mono), Rational(1)}};
    return ExactPoly(std::move(ctx), std::move(terms));
}

ExactPoly ExactPoly::monomial(ContextPtr ctx, Exponents mono, Rational coeff) {
    if (mono.size() != ctx->size())
        throw DomainError("exponent vector does not match context size");
    if (coeff == 0)
        return zero(std::move(ctx));
    std::vector<Term> terms{{std::move(mono), std::move(coeff)}};
    return ExactPoly(std::move(ctx), std::move(terms));
}

ExactPoly ExactPoly::from_terms(ContextPtr ctx, std::vector<Term> terms) {
    for (const auto& t : terms)
        if (t.mono.size() != ctx->size())
            throw DomainError("exponent vector does not match context size");
    ExactPoly p(std::move(ctx), std::move(terms));
    p.canonicalize();
    return p;
}

void ExactPoly::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return mono_less(a.mono, b.mono); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().mono == t.mono)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
        if (!merged.empty() && merged.back().coeff == 0)
            merged.pop_back();
    }
    terms_ = std::move(merged);
}

std::optional<Rational> ExactPoly::as_rational() const {
    if (terms_.empty())
        return Rational(0);
    if (terms_.size() == 1 &&
        std::all_of(terms_[0].mono.begin(), terms_[0].mono.end(), [](auto e) { return e == 0; }))
        return terms_[0].coeff;
    return std::nullopt;
}

unsigned ExactPoly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_)
        d = std::max(d, static_cast<unsigned>(t.mono.at(var)));
    return d;
}

unsigned ExactPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_)
        d = std::max(d, static_cast<unsigned>(std::accumulate(t.mono.begin(), t.mono.end(), 0ul)));
    return d;
}

bool ExactPoly::depends_on(std::size_t var) const {
    for (const auto& t : terms_)
        if (t.mono.at(var) != 0)
            return true;
    return false;
}

bool ExactPoly::depends_on_any_formal() const {
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < PolyContext::kFormalCount; ++i)
            if (t.mono[i] != 0)
                return true;
    return false;
}

bool ExactPoly::depends_on_any_parameter() const {
    for (const auto& t : terms_)
        for (std::size_t i = PolyContext::kFormalCount; i < t.mono.size(); ++i)
            if (t.mono[i] != 0)
                return true;
    return false;
}

ExactPoly ExactPoly::operator-() const {
    std::vector<Term> terms = terms_;
    for (auto& t : terms)
        t.coeff = -t.coeff;
    return ExactPoly(ctx_, std::move(terms));
}

ExactPoly ExactPoly::operator+(const ExactPoly& q) const {
    require_same_context(*this, q);
    std::vector<Term> out;
    out.reserve(terms_.size() + q.terms_.size());
    auto a = terms_.begin(), b = q.terms_.begin();
    while (a != terms_.end() && b != q.terms_.end()) {
        if (a->mono == b->mono) {
            Rational c = a->coeff + b->coeff;
            if (c != 0)
                out.push_back({a->mono, std::move(c)});
            ++a;
            ++b;
        } else if (mono_less(a->mono, b->mono)) {
            out.push_back(*a++);
        } else {
            out.push_back(*b++);
        }
    }
    out.insert(out.end(), a, terms_.end());
    out.insert(out.end(), b, q.terms_.end());
    return ExactPoly(ctx_, std::move(out));
}

ExactPoly ExactPoly::operator-(const ExactPoly& q) const {
    return *this + (-q);
}

ExactPoly ExactPoly::operator*(const ExactPoly& q) const {
    require_same_context(*this, q);
    std::map<Exponents, Rational, MonoLess> acc;
    for (const auto& ta : terms_) {
        for (const auto& tb : q.terms_) {
            Exponents mono(ta.mono.size());
            for (std::size_t i = 0; i < mono.size(); ++i)
                mono[i] = ta.mono[i] + tb.mono[i];
            auto [it, inserted] = acc.emplace(std::move(mono), ta.coeff * tb.coeff);
            if (!inserted)
                it->second += ta.coeff * tb.coeff;
        }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [mono, coeff] : acc)
        if (coeff != 0)
            out.push_back({mono, std::move(coeff)});
    return ExactPoly(ctx_, std::move(out));
}

ExactPoly ExactPoly::operator*(const Rational& c) const {
    if (c == 0)
        return zero(ctx_);
    std::vector<Term> terms = terms_;
    for (auto& t : terms)
        t.coeff *= c;
    return ExactPoly(ctx_, std::move(terms));
}

bool ExactPoly::operator==(const ExactPoly& q) const {
    if (!ctx_->same_as(*q.ctx_) || terms_.size() != q.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != q.terms_[i].mono || terms_[i].coeff != q.terms_[i].coeff)
            return false;
    return true;
}

ExactPoly ExactPoly::pow(unsigned e) const {
    ExactPoly result = constant(ctx_, Rational(1));
    ExactPoly base = *this;
    while (e > 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e > 0)
            base = base * base;
    }
    return result;
}

ExactPoly ExactPoly::substitute(std::size_t var, const ExactPoly& repl) const {
    require_same_context(*this, repl);
    if (var >= ctx_->size())
        throw DomainError("variable index out of range");
    if (!depends_on(var))
        return *this;
    unsigned n = degree_in(var);
    // Horner in var; the extracted coefficients are var-free, so repl may
    // mention var without capture.
    ExactPoly result = coeff_of(var, n);
    for (unsigned k = n; k-- > 0;)
        result = result * repl + coeff_of(var, k);
    return result;
}

ExactPoly ExactPoly::substitute(std::string_view var, const ExactPoly& repl) const {
    return substitute(ctx_->index_of(var), repl);
}

ExactPoly ExactPoly::coeff_of(std::size_t var, unsigned k) const {
    if (var >= ctx_->size())
        throw DomainError("variable index out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.mono[var] == k) {
            Term u = t;
            u.mono[var] = 0;
            out.push_back(std::move(u));
        }
    }
    ExactPoly p(ctx_, std::move(out));
    p.canonicalize();
    return p;
}

ExactPoly ExactPoly::coeff_of(std::string_view var, unsigned k) const {
    return coeff_of(ctx_->index_of(var), k);
}

ExactPoly ExactPoly::lift_to(ContextPtr bigger) const {
    if (ctx_->same_as(*bigger))
        return *this;
    if (!ctx_->subset_of(*bigger))
        throw ContextMismatchError("target context does not contain all source variables");
    std::vector<std::size_t> where(ctx_->size());
    for (std::size_t i = 0; i < ctx_->size(); ++i)
        where[i] = bigger->index_of(ctx_->var(i).name);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents mono(bigger->size(), 0);
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            mono[where[i]] = t.mono[i];
        out.push_back({std::move(mono), t.coeff});
    }
    ExactPoly p(std::move(bigger), std::move(out));
    p.canonicalize();
    return p;
}

namespace {

// Renders |coeff| * mono over the given variable slots; empty for |coeff|==1
// with an empty monomial is the caller's problem (returns "1" there).
std::string magnitude_str(const PolyContext& ctx, const Exponents& mono, const Rational& coeff,
                          std::size_t lo, std::size_t hi) {
    Rational a = abs(coeff);
    std::vector<std::string> parts;
    bool any_var = false;
    for (std::size_t i = lo; i < hi && i < mono.size(); ++i)
        if (mono[i] != 0)
            any_var = true;
    if (a != 1 || !any_var)
        parts.push_back(to_string(a));
    for (std::size_t i = lo; i < hi && i < mono.size(); ++i) {
        if (mono[i] == 0)
            continue;
        std::string v = ctx.var(i).name;
        if (mono[i] > 1)
            v += "^" + std::to_string(mono[i]);
        parts.push_back(std::move(v));
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += "*";
        out += parts[i];
    }
    return out;
}

// Compact sum of parameter-only terms: "1-b", "-1+b".
std::string param_sum_str(const PolyContext& ctx, const std::vector<Term>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        bool neg = terms[i].coeff < 0;
        if (i == 0)
            out += neg ? "-" : "";
        else
            out += neg ? "-" : "+";
        out += magnitude_str(ctx, terms[i].mono, terms[i].coeff, PolyContext::kFormalCount,
                             terms[i].mono.size());
    }
    return out;
}

std::string formal_mono_str(const PolyContext& ctx, const Exponents& mono) {
    std::string out;
    for (std::size_t i = 0; i < PolyContext::kFormalCount && i < mono.size(); ++i) {
        if (mono[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += ctx.var(i).name;
        if (mono[i] > 1)
            out += "^" + std::to_string(mono[i]);
    }
    return out;
}

} // namespace

std::string ExactPoly::str() const {
    if (terms_.empty())
        return "0";

    // Group terms by their formal-variable monomial.
    std::map<Exponents, std::vector<Term>, MonoLess> groups;
    for (const auto& t : terms_) {
        Exponents formal(t.mono.begin(),
                         t.mono.begin() + std::min<std::size_t>(PolyContext::kFormalCount,
                                                                t.mono.size()));
        formal.resize(PolyContext::kFormalCount, 0);
        groups[formal].push_back(t);
    }
    // Within a group the storage order is already graded-lex on the
    // parameter part (the formal part is constant across the group).

    std::string out;
    bool first = true;
    for (const auto& [formal, terms] : groups) {
        std::string fm = formal_mono_str(*ctx_, formal);
        std::string body;
        bool negative = false;
        if (terms.size() == 1) {
            negative = terms[0].coeff < 0;
            std::string mag =
                magnitude_str(*ctx_, terms[0].mono, terms[0].coeff, PolyContext::kFormalCount,
                              terms[0].mono.size());
            bool trivial_mag = mag == "1";
            if (fm.empty())
                body = mag;
            else if (trivial_mag)
                body = fm;
            else
                body = mag + "*" + fm;
        } else {
            std::string inner = param_sum_str(*ctx_, terms);
            if (fm.empty())
                body = inner;
            else
                body = "(" + inner + ")*" + fm;
        }
        if (first) {
            out += (negative ? "-" : "") + body;
            first = false;
        } else {
            out += (negative ? " - " : " + ") + body;
        }
    }
    return out;
}

std::optional<ExactPoly> exact_divide(const ExactPoly& p, const ExactPoly& d, std::size_t var) {
    require_same_context(p, d);
    unsigned dn = d.degree_in(var);
    if (d.is_zero() || dn == 0)
        throw DomainError("divisor must have positive degree in the division variable");
    ExactPoly lead = d.coeff_of(var, dn);
    auto lc = lead.as_rational();
    if (!lc)
        throw NotMonicError("divisor leading coefficient involves parameters");

    const auto& ctx = p.context();
    Exponents unit(ctx->size(), 0);
    ExactPoly quot = ExactPoly::zero(ctx);
    ExactPoly rem = p;
    while (!rem.is_zero()) {
        unsigned k = rem.degree_in(var);
        if (k < dn)
            break;
        ExactPoly lead_r = rem.coeff_of(var, k);
        Exponents shift = unit;
        shift[var] = k - dn;
        ExactPoly t = lead_r * ExactPoly::monomial(ctx, shift, Rational(1) / *lc);
        quot += t;
        rem -= t * d;
    }
    if (!rem.is_zero())
        return std::nullopt;
    return quot;
}

std::optional<ExactPoly> exact_divide(const ExactPoly& p, const ExactPoly& d,
                                      std::string_view var) {
    return exact_divide(p, d, p.context()->index_of(var));
}

} // namespace lieconf

#pragma once

// Shared test helpers. NaivePoly is a deliberately primitive polynomial
// arithmetic, kept independent of ExactPoly's code paths so it can serve as
// an oracle for them.

#include "lieconf/poly.hpp"

#include <map>
#include <random>
#include <vector>

namespace testsupport {

using lieconf::ExactPoly;
using lieconf::Rational;

using NaiveMono = std::vector<unsigned>;
using NaivePoly = std::map<NaiveMono, Rational>;

inline void naive_insert(NaivePoly& p, const NaiveMono& m, const Rational& c) {
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted)
        it->second += c;
    if (it->second == 0)
        p.erase(it);
}

inline NaivePoly naive_of(const ExactPoly& p) {
    NaivePoly out;
    for (const auto& t : p.terms()) {
        NaiveMono m(t.mono.begin(), t.mono.end());
        naive_insert(out, m, t.coeff);
    }
    return out;
}

inline NaivePoly naive_add(const NaivePoly& a, const NaivePoly& b) {
    NaivePoly out = a;
    for (const auto& [m, c] : b)
        naive_insert(out, m, c);
    return out;
}

inline NaivePoly naive_mul(const NaivePoly& a, const NaivePoly& b) {
    NaivePoly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            NaiveMono m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = ma[i] + mb[i];
            naive_insert(out, m, ca * cb);
        }
    return out;
}

inline NaivePoly naive_pow(const NaivePoly& a, unsigned e, std::size_t nvars) {
    NaivePoly out;
    out.emplace(NaiveMono(nvars, 0), Rational(1));
    for (unsigned i = 0; i < e; ++i)
        out = naive_mul(out, a);
    return out;
}

// Term-by-term substitution (no Horner): each var^e factor becomes repl^e.
inline NaivePoly naive_subst(const NaivePoly& p, std::size_t var, const NaivePoly& repl,
                             std::size_t nvars) {
    NaivePoly out;
    for (const auto& [m, c] : p) {
        NaiveMono rest = m;
        unsigned e = rest[var];
        rest[var] = 0;
        NaivePoly piece;
        piece.emplace(rest, c);
        piece = naive_mul(piece, naive_pow(repl, e, nvars));
        out = naive_add(out, piece);
    }
    return out;
}

inline Rational naive_eval(const NaivePoly& p, const std::vector<Rational>& point) {
    Rational total(0);
    for (const auto& [m, c] : p) {
        Rational term = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (unsigned k = 0; k < m[i]; ++k)
                term *= point[i];
        total += term;
    }
    return total;
}

inline Rational random_rational(std::mt19937& rng, int num_lo = -6, int num_hi = 6,
                                int den_hi = 3) {
    std::uniform_int_distribution<int> num(num_lo, num_hi);
    std::uniform_int_distribution<int> den(1, den_hi);
    return lieconf::make_rational(num(rng), den(rng));
}

/// Random sparse polynomial over the first `nvars` context variables with
/// per-variable degree <= max_deg and at most max_terms terms.
inline ExactPoly random_poly(std::mt19937& rng, const lieconf::ContextPtr& ctx,
                             std::size_t nvars, unsigned max_deg, unsigned max_terms,
                             bool allow_zero = true) {
    std::uniform_int_distribution<unsigned> nterms(allow_zero ? 0 : 1, max_terms);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    std::vector<lieconf::Term> terms;
    unsigned n = nterms(rng);
    for (unsigned t = 0; t < n; ++t) {
        lieconf::Exponents mono(ctx->size(), 0);
        for (std::size_t v = 0; v < nvars && v < ctx->size(); ++v)
            mono[v] = deg(rng);
        terms.push_back({std::move(mono), random_rational(rng)});
    }
    return ExactPoly::from_terms(ctx, std::move(terms));
}

} // namespace testsupport

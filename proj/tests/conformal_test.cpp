#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lieconf/conformal.hpp"
#include "support.hpp"

#include <random>

using namespace lieconf;
using namespace testsupport;

namespace {

ExactPoly var(const ContextPtr& c, std::string_view n) {
    return ExactPoly::variable(c, n);
}

ConformalElement random_element(std::mt19937& rng, const ConformalAlgebra& A) {
    ConformalElement e = A.zero_element();
    std::uniform_int_distribution<unsigned> deg(0, 2);
    std::uniform_int_distribution<int> pick(0, 2);
    for (auto& c : e.coeffs) {
        ExactPoly p = ExactPoly::zero(A.context());
        int nterms = pick(rng);
        for (int t = 0; t <= nterms; ++t) {
            Exponents mono(A.context()->size(), 0);
            mono[PolyContext::kPartial] = deg(rng);
            p += ExactPoly::monomial(A.context(), mono, random_rational(rng));
        }
        c = p;
    }
    return e;
}

std::vector<ConformalAlgebra> builtins() {
    std::vector<ConformalAlgebra> out;
    out.push_back(make_virasoro());
    out.push_back(make_w());
    out.push_back(make_hv());
    out.push_back(make_w22());
    out.push_back(make_w(make_rational(1, 2)));
    out.push_back(make_sv());
    return out;
}

} // namespace

TEST_CASE("bracket reproduces the defining tables") {
    auto W = make_w();
    auto ctx = W.context();
    auto pa = var(ctx, "pa"), la = var(ctx, "la"), b = var(ctx, "b");
    auto one = ExactPoly::constant(ctx, Rational(1));

    auto L = W.generator("L");
    auto H = W.generator("H");

    auto ll = bracket(W, L, L);
    CHECK(ll.coeffs[0] == pa + la * Rational(2));
    CHECK(ll.coeffs[1].is_zero());

    auto lh = bracket(W, L, H);
    CHECK(lh.coeffs[1] == pa + (one - b) * la);

    // sesquilinearity in the first slot: [pa L la L] = -la (pa + 2 la) L
    auto paL = scale(pa, L);
    auto pll = bracket(W, paL, L);
    CHECK(pll.coeffs[0] == -la * (pa + la * Rational(2)));

    CHECK(bracket(W, H, H).is_zero());

    auto SV = make_sv();
    auto svctx = SV.context();
    auto yl = bracket(SV, SV.generator("Y"), SV.generator("L"));
    CHECK(yl.coeffs[SV.generator_index("Y")] ==
          var(svctx, "pa") * make_rational(1, 2) + var(svctx, "la") * make_rational(3, 2));
    CHECK(str(SV, yl) == "(3/2*la + 1/2*pa)*Y");
}

TEST_CASE("pinned builtins specialize the table") {
    auto hv = make_hv();
    auto ctx = hv.context();
    CHECK(hv.entry(0, 1).coeffs[1] == var(ctx, "pa") + var(ctx, "la"));
    CHECK(hv.pinned("b") == Rational(0));

    auto w22 = make_w22();
    CHECK(w22.entry(0, 1).coeffs[1] ==
          var(w22.context(), "pa") + var(w22.context(), "la") * Rational(2));

    auto sv = make_sv();
    auto ml = sv.entry(sv.generator_index("M"), sv.generator_index("L"));
    CHECK(ml.coeffs[sv.generator_index("M")] == var(sv.context(), "la"));

    CHECK(builtin_algebra("w:1/2"));
    CHECK(builtin_algebra("w:1/2")->pinned("b") == make_rational(1, 2));
    CHECK(builtin_algebra("w:b"));
    CHECK(!builtin_algebra("w:b")->pinned("b"));
    CHECK(!builtin_algebra("nope"));
    CHECK(!builtin_algebra("w:x"));
}

TEST_CASE("skew and jacobi hold for every builtin") {
    for (const auto& A : builtins()) {
        CAPTURE(A.name());
        CHECK(check_skew(A).pass());
        CHECK(check_jacobi(A).pass());
    }
}

TEST_CASE("corrupted self-bracket fails skew and jacobi with witnesses") {
    auto ctx = PolyContext::make();
    auto pa = var(ctx, "pa"), la = var(ctx, "la");
    LambdaElement bad{{pa + la * Rational(3)}};
    ConformalAlgebra A("bad", ctx, {"L"}, {{bad}});

    auto skew = check_skew(A);
    REQUIRE(!skew.pass());
    // residual = (pa+3la) + (pa+3(-la-pa)) = -pa
    CHECK(skew.witnesses[0].residual == -pa);

    auto jac = check_jacobi(A);
    REQUIRE(!jac.pass());
    // spot-check the witness is a genuinely nonzero polynomial at la=1, mu=2
    auto w = jac.witnesses[0].residual.substitute("la", ExactPoly::constant(ctx, Rational(1)))
                 .substitute("mu", ExactPoly::constant(ctx, Rational(2)))
                 .substitute("pa", ExactPoly::constant(ctx, Rational(0)));
    CHECK(w.as_rational());
    CHECK(*w.as_rational() != 0);
}

TEST_CASE("j-products extract the discrete data") {
    auto W = make_w();
    auto ctx = W.context();
    auto pa = var(ctx, "pa");
    auto L = W.generator("L");
    auto H = W.generator("H");

    auto l1l = j_product(W, L, L, 1);
    CHECK(l1l.coeffs[0] == ExactPoly::constant(ctx, Rational(2))); // L_(1)L = 2L

    auto l0h = j_product(W, L, H, 0);
    CHECK(l0h.coeffs[1] == pa); // L_(0)H = pa H

    CHECK(is_zero(j_product(W, L, L, 5)));
    CHECK(is_zero(j_product(W, L, H, 2)));

    // (pa L)_(1) H = -1 * L_(0) H = -pa H
    auto d1 = j_product(W, scale(pa, L), H, 1);
    CHECK(d1.coeffs[1] == -pa);
}

TEST_CASE("locality bounds are exactly the la-degree plus one") {
    auto W = make_w();
    CHECK(locality_bound(W, 0, 0) == 2);
    CHECK(locality_bound(W, 0, 1) == 2);
    CHECK(locality_bound(W, 1, 1) == 0);
    CHECK(locality_bound(W) == 2);

    auto SV = make_sv();
    CHECK(locality_bound(SV) == 2);
    for (GeneratorId i = 0; i < SV.rank(); ++i)
        for (GeneratorId j = 0; j < SV.rank(); ++j) {
            unsigned bound = locality_bound(SV, i, j);
            // vanishing at the bound, nonzero just below it
            CHECK(is_zero(j_product(SV, SV.generator(i), SV.generator(j), bound)));
            if (bound > 0)
                CHECK(!is_zero(j_product(SV, SV.generator(i), SV.generator(j), bound - 1)));
        }
}

TEST_CASE("j-product axioms verified symbolically") {
    for (const auto& A : builtins()) {
        CAPTURE(A.name());
        CHECK(check_j_product_axioms(A, 5).pass());
    }
    CHECK_THROWS_AS((void)check_j_product_axioms(make_w(), 1), DomainError);

    // Vir, pair (L,L), n=0, third axiom expanded by hand:
    // L_(0)L = -(L_(0)L) + pa*(L_(1)L) = -pa L + 2 pa L = pa L
    auto V = make_virasoro();
    auto ctx = V.context();
    auto pa = var(ctx, "pa");
    auto L = V.generator("L");
    auto lhs = j_product(V, L, L, 0);
    CHECK(lhs.coeffs[0] == pa);
    auto rhs = add(scale(Rational(-1), j_product(V, L, L, 0)),
                   scale(pa, j_product(V, L, L, 1)));
    CHECK(equal(lhs, rhs));
}

TEST_CASE("sesquilinearity is a theorem of the implementation") {
    std::mt19937 rng(5150);
    for (const auto& A : builtins()) {
        CAPTURE(A.name());
        auto ctx = A.context();
        auto pa = var(ctx, "pa"), la = var(ctx, "la");
        for (int trial = 0; trial < 25; ++trial) {
            auto a = random_element(rng, A);
            auto b = random_element(rng, A);
            auto base = bracket(A, a, b);

            auto lhs1 = bracket(A, scale(pa, a), b);
            CHECK(equal(lhs1, scale(-la, base)));

            auto lhs2 = bracket(A, a, scale(pa, b));
            CHECK(equal(lhs2, scale(pa + la, base)));
        }
    }
}

TEST_CASE("bracket rejects foreign elements") {
    auto W = make_w();
    auto V = make_virasoro();
    CHECK_THROWS_AS((void)bracket(W, V.generator(0), W.generator(0)), ContextMismatchError);

    auto bad = W.zero_element();
    bad.coeffs[0] = var(W.context(), "la");
    CHECK_THROWS_AS((void)bracket(W, bad, W.generator(0)), DomainError);
}

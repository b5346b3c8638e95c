#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lieconf/annihilation.hpp"
#include "support.hpp"

using namespace lieconf;
using namespace testsupport;

namespace {

AnnAlgebra ann_of(ConformalAlgebra A) {
    return AnnAlgebra(std::make_shared<ConformalAlgebra>(std::move(A)));
}

/// pa - L(-1), the paper's central element.
AnnElement central_candidate(const AnnAlgebra& A) {
    auto x = A.partial();
    GeneratorId L = A.source().generator_index("L");
    x.add_term(A.at_display(L, Rational(-1)), ExactPoly::constant(A.context(), Rational(-1)));
    return x;
}

TruncatedSubspace single_layer(const AnnAlgebra& A, long layer, long N) {
    std::vector<AnnElement> elems;
    for (GeneratorId g = 0; g < A.source().rank(); ++g)
        for (unsigned raw = 0; long(raw) <= N + 2; ++raw)
            if (A.layer({g, raw}) == layer)
                elems.push_back(A.basis(g, raw));
    return span_of(A, elems, N);
}

} // namespace

TEST_CASE("display indices and layers follow the paper's shifts") {
    auto W = ann_of(make_w());
    GeneratorId L = 0, H = 1;
    CHECK(W.display_index({L, 0}) == Rational(-1));
    CHECK(W.display_index({H, 0}) == Rational(0));
    CHECK(W.layer({L, 0}) == -1);
    CHECK(W.at_display(L, Rational(3)) == AnnBasisElt{L, 4});
    CHECK_THROWS_AS(W.at_display(L, Rational(-2)), DomainError);
    CHECK_THROWS_AS(W.at_display(L, make_rational(1, 2)), DomainError);

    auto SV = ann_of(make_sv());
    GeneratorId Y = SV.source().generator_index("Y");
    CHECK(SV.display_index({Y, 0}) == make_rational(-1, 2));
    CHECK(SV.layer({Y, 0}) == -1);
    CHECK(SV.layer({Y, 1}) == 0);
    CHECK(str(SV, AnnBasisElt{Y, 1}) == "Y(1/2)");
}

TEST_CASE("structure constants of W(b) from the generic bracket") {
    auto W = ann_of(make_w());
    auto ctx = W.context();
    GeneratorId L = 0, H = 1;
    auto b = ExactPoly::variable(ctx, "b");

    // display-index brackets for a window of pairs
    for (long m = -1; m <= 6; ++m) {
        for (long n = -1; n <= 6; ++n) {
            auto lm = W.basis(W.at_display(L, Rational(m)));
            auto ln = W.basis(W.at_display(L, Rational(n)));
            auto got = ann_bracket(W, lm, ln);
            AnnElement expected(ctx);
            if (m != n)
                expected.add_term(W.at_display(L, Rational(m + n)),
                                  ExactPoly::constant(ctx, Rational(m - n)));
            CHECK(equal(got, expected));

            if (n < 0)
                continue;
            auto hn = W.basis(W.at_display(H, Rational(n)));
            auto goth = ann_bracket(W, lm, hn);
            AnnElement expectedh(ctx);
            ExactPoly coeff = -(b * Rational(m) + ExactPoly::constant(ctx, Rational(n)) + b);
            if (!coeff.is_zero())
                expectedh.add_term(W.at_display(H, Rational(m + n)), coeff);
            CHECK(equal(goth, expectedh));
        }
    }

    // H spans an abelian part
    CHECK(ann_bracket(W, W.basis(H, 3), W.basis(H, 5)).is_zero());

    // [pa, H_n] = -n H_{n-1}
    auto got = ann_bracket(W, W.partial(), W.basis(H, 4));
    AnnElement expected(ctx);
    expected.add_term({H, 3}, ExactPoly::constant(ctx, Rational(-4)));
    CHECK(equal(got, expected));
}

TEST_CASE("structure constants of SV with half-integer indices") {
    auto SV = ann_of(make_sv());
    auto ctx = SV.context();
    GeneratorId L = SV.source().generator_index("L");
    GeneratorId Y = SV.source().generator_index("Y");
    GeneratorId M = SV.source().generator_index("M");

    for (long m = -1; m <= 5; ++m) {
        for (long twice_p = -1; twice_p <= 9; twice_p += 2) {
            Rational p = make_rational(twice_p, 2);
            auto lm = SV.basis(SV.at_display(L, Rational(m)));
            auto yp = SV.basis(SV.at_display(Y, p));
            auto got = ann_bracket(SV, lm, yp);
            AnnElement expected(ctx);
            Rational c = make_rational(m, 2) - p;
            if (c != 0)
                expected.add_term(SV.at_display(Y, Rational(m) + p),
                                  ExactPoly::constant(ctx, c));
            CHECK(equal(got, expected));
        }
    }

    // [Y_p, Y_q] = (p-q) M_{p+q}
    auto y1 = SV.basis(SV.at_display(Y, make_rational(1, 2)));
    auto y2 = SV.basis(SV.at_display(Y, make_rational(5, 2)));
    auto got = ann_bracket(SV, y1, y2);
    AnnElement expected(ctx);
    expected.add_term(SV.at_display(M, Rational(3)), ExactPoly::constant(ctx, Rational(-2)));
    CHECK(equal(got, expected));

    // [pa, Y_p] = -(p + 1/2) Y_{p-1}
    auto gotp = ann_bracket(SV, SV.partial(), SV.basis(Y, 4)); // Y_{7/2}
    AnnElement expectedp(ctx);
    expectedp.add_term({Y, 3}, ExactPoly::constant(ctx, Rational(-4)));
    CHECK(equal(gotp, expectedp));

    CHECK(ann_bracket(SV, SV.basis(M, 2), SV.basis(Y, 3)).is_zero());
}

TEST_CASE("presentation oracle equivalence") {
    CHECK(verify_presentation(ann_of(make_w()), 12).pass());
    CHECK(verify_presentation(ann_of(make_hv()), 12).pass());
    CHECK(verify_presentation(ann_of(make_w22()), 12).pass());
    CHECK(verify_presentation(ann_of(make_virasoro()), 12).pass());
    CHECK(verify_presentation(ann_of(make_sv()), 12).pass());
    CHECK_THROWS_AS((void)verify_presentation(ann_of(make_w()), 1), DomainError);
}

TEST_CASE("corrupted shift table breaks the presentation") {
    auto src = std::make_shared<ConformalAlgebra>(make_w());
    AnnAlgebra bad(src, {Rational(0), Rational(0)}); // L shift should be 1

    // concrete mismatch, frozen from the generating identity:
    // [L_(0), L_(1)] = (L_(0)L)_(1) = (pa L)_(1) = -L_(0)
    auto got = ann_bracket(bad, bad.basis(0, 0), bad.basis(0, 1));
    AnnElement expected(bad.context());
    expected.add_term({0, 0}, ExactPoly::constant(bad.context(), Rational(-1)));
    CHECK(equal(got, expected));
    // ... while the shift-0 closed form would predict -L_(1)
    auto cf = closed_form_bracket(bad, {0, 0}, {0, 1});
    REQUIRE(cf);
    CHECK(!equal(got, *cf));

    CHECK(!verify_presentation(bad, 6).pass());
}

TEST_CASE("pa - L(-1) is central; H_0 is not") {
    auto W = ann_of(make_w());
    CHECK(is_central(W, central_candidate(W), 20));

    auto SV = ann_of(make_sv());
    CHECK(is_central(SV, central_candidate(SV), 20));

    // [L_1, H_0] = -2b H_1 is nonzero for generic b
    auto H0 = W.basis(W.at_display(1, Rational(0)));
    CHECK(!is_central(W, H0, 2));
    auto br = ann_bracket(W, W.basis(W.at_display(0, Rational(1))), H0);
    auto ctx = W.context();
    AnnElement expected(ctx);
    expected.add_term(W.at_display(1, Rational(1)),
                      ExactPoly::variable(ctx, "b") * Rational(-2));
    CHECK(equal(br, expected));
}

TEST_CASE("filtration windows") {
    auto W = ann_of(make_w());
    CHECK(filtration(W, -1, 5).dim() == 13); // L(-1..5), H(0..5)
    CHECK(filtration(W, 0, 5).dim() == 12);
    CHECK(filtration(W, 5, 5).dim() == 2);
    CHECK(filtration(W, 6, 5).dim() == 0);
    CHECK_THROWS_AS((void)filtration(W, -2, 5), DomainError);

    auto SV = ann_of(make_sv());
    auto F0 = filtration(SV, 0, 5);
    CHECK(F0.dim() == 18); // L_i, M_i, Y_{i+1/2} for 0 <= i <= 5
    GeneratorId Y = SV.source().generator_index("Y");
    CHECK(subspace_contains(F0, SV.basis(SV.at_display(Y, make_rational(11, 2)))));
    CHECK(!subspace_contains(F0, SV.basis(SV.at_display(Y, make_rational(-1, 2)))));
}

TEST_CASE("derived subalgebra identities") {
    const long N = 6;

    // b = 0: [L_0, L_0] = L_1
    auto W0 = ann_of(make_hv());
    auto chain0 = derived_series(W0, filtration(W0, 0, N), 1);
    CHECK(subspace_equal(chain0[1], filtration(W0, 1, N)));

    // b = 1: [L_0, L_0] = C H_0 + L_1
    auto W1 = ann_of(make_w(Rational(1)));
    auto chain1 = derived_series(W1, filtration(W1, 0, N), 1);
    std::vector<AnnElement> expected1{W1.basis(W1.at_display(1, Rational(0)))};
    for (const auto& e : filtration(W1, 1, N).ambient)
        if (W1.layer(e) >= 1)
            expected1.push_back(W1.basis(e));
    CHECK(subspace_equal(chain1[1], span_of(W1, expected1, N)));
    CHECK(!subspace_equal(chain1[1], filtration(W1, 1, N)));

    // symbolic b: same as the generic nonzero case
    auto Wb = ann_of(make_w());
    auto chainb = derived_series(Wb, filtration(Wb, 0, N), 1);
    std::vector<AnnElement> expectedb{Wb.basis(Wb.at_display(1, Rational(0)))};
    for (const auto& e : filtration(Wb, 1, N).ambient)
        if (Wb.layer(e) >= 1)
            expectedb.push_back(Wb.basis(e));
    CHECK(subspace_equal(chainb[1], span_of(Wb, expectedb, N)));

    // SV: [L_0, L_0] = C Y_{1/2} + L_1
    auto SV = ann_of(make_sv());
    auto chainsv = derived_series(SV, filtration(SV, 0, N), 1);
    GeneratorId Y = SV.source().generator_index("Y");
    std::vector<AnnElement> expectedsv{SV.basis(SV.at_display(Y, make_rational(1, 2)))};
    for (const auto& e : filtration(SV, 1, N).ambient)
        if (SV.layer(e) >= 1)
            expectedsv.push_back(SV.basis(e));
    CHECK(subspace_equal(chainsv[1], span_of(SV, expectedsv, N)));
}

TEST_CASE("derived_series rejects non-closed seeds") {
    auto W = ann_of(make_w());
    // span{L_1, H_0}: [L_1, H_0] = -2b H_1 sticks out
    std::vector<AnnElement> elems{W.basis(W.at_display(0, Rational(1))),
                                  W.basis(W.at_display(1, Rational(0)))};
    CHECK_THROWS_AS((void)derived_series(W, span_of(W, elems, 5), 1), ClosureError);
}

TEST_CASE("solvability of the truncated quotient") {
    auto W0 = ann_of(make_hv());
    auto r0 = is_solvable_quotient(W0, 5);
    CHECK(r0.solvable);
    CHECK(r0.derived_length <= 6);
    CHECK(r0.nests_single);

    auto W3 = ann_of(make_w(Rational(3)));
    auto r3 = is_solvable_quotient(W3, 5);
    CHECK(r3.solvable);
    CHECK(r3.derived_length <= 11);
    CHECK(r3.nests_double);

    auto Wb = ann_of(make_w());
    auto rb = is_solvable_quotient(Wb, 4);
    CHECK(rb.solvable);
    CHECK(rb.nests_double);

    auto SV = ann_of(make_sv());
    auto rsv = is_solvable_quotient(SV, 4);
    CHECK(rsv.solvable);
    CHECK(rsv.nests_double);

    // N = 1: the quotient is abelian or nearly so
    for (auto A : {ann_of(make_w()), ann_of(make_sv()), ann_of(make_virasoro())}) {
        auto r = is_solvable_quotient(A, 1);
        CHECK(r.solvable);
        CHECK(r.derived_length <= 2);
    }
}

TEST_CASE("ann bracket is a Lie bracket on truncated windows") {
    for (auto A : {ann_of(make_w()), ann_of(make_sv()), ann_of(make_virasoro())}) {
        CAPTURE(A.source().name());
        std::vector<AnnBasisElt> basis;
        for (GeneratorId g = 0; g < A.source().rank(); ++g)
            for (unsigned raw = 0; raw <= 5; ++raw)
                basis.push_back({g, raw});

        for (const auto& x : basis)
            for (const auto& y : basis) {
                auto xy = ann_bracket(A, A.basis(x), A.basis(y));
                auto yx = ann_bracket(A, A.basis(y), A.basis(x));
                CHECK(add(xy, yx).is_zero()); // antisymmetry

                // grading on display indices: every term lands on dm+dn
                Rational target = A.display_index(x) + A.display_index(y);
                for (const auto& [e, c] : xy.terms)
                    CHECK(A.display_index(e) == target);
            }

        for (const auto& x : basis)
            for (const auto& y : basis)
                for (const auto& z : basis) {
                    auto lhs = ann_bracket(A, A.basis(x), ann_bracket(A, A.basis(y), A.basis(z)));
                    auto r1 = ann_bracket(A, ann_bracket(A, A.basis(x), A.basis(y)), A.basis(z));
                    auto r2 = ann_bracket(A, A.basis(y), ann_bracket(A, A.basis(x), A.basis(z)));
                    CHECK(equal(lhs, add(r1, r2)));
                }
    }
}

TEST_CASE("pa lowers layers exactly") {
    const long N = 6;
    for (auto A : {ann_of(make_w()), ann_of(make_sv())}) {
        CAPTURE(A.source().name());
        for (long layer = 0; layer <= N; ++layer) {
            std::vector<AnnElement> images;
            for (GeneratorId g = 0; g < A.source().rank(); ++g)
                for (unsigned raw = 0; long(raw) <= N + 2; ++raw)
                    if (A.layer({g, raw}) == layer)
                        images.push_back(ann_bracket(A, A.partial(), A.basis(g, raw)));
            CHECK(subspace_equal(span_of(A, images, N), single_layer(A, layer - 1, N)));
        }
    }
}

TEST_CASE("layer-n filtrations are ideals of the layer-0 subalgebra") {
    const long N = 5;
    for (auto A : {ann_of(make_w()), ann_of(make_sv())}) {
        for (long n = 0; n <= 3; ++n) {
            auto Ln = filtration(A, n, N);
            for (const auto& e0 : filtration(A, 0, N).ambient) {
                if (A.layer(e0) != 0)
                    continue;
                for (const auto& e : Ln.ambient) {
                    if (A.layer(e) < n)
                        continue;
                    auto br = ann_bracket(A, A.basis(e0), A.basis(e));
                    AnnElement trunc(A.context());
                    for (const auto& [t, c] : br.terms)
                        if (A.layer(t) <= N)
                            trunc.add_term(t, c);
                    CHECK(subspace_contains(Ln, trunc));
                }
            }
        }
    }
}

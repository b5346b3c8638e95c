#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lieconf/modules.hpp"
#include "support.hpp"

#include <random>

using namespace lieconf;
using namespace testsupport;

namespace {

AlgebraPtr shared_w(std::optional<Rational> pin = std::nullopt) {
    return std::make_shared<ConformalAlgebra>(pin ? make_w(*pin) : make_w());
}

RankOneParams pinned(long d, long a) {
    return {Rational(d), Rational(a), false, Rational(0)};
}

RankOneParams pinned(long d, long a, long beta) {
    return {Rational(d), Rational(a), true, Rational(beta)};
}

} // namespace

TEST_CASE("rank-one actions over W(b)") {
    auto W0 = shared_w(Rational(0));
    auto M = make_rank_one_w(W0, {std::nullopt, std::nullopt, true, std::nullopt});
    auto ctx = M.context();
    auto pa = ExactPoly::variable(ctx, "pa");
    auto la = ExactPoly::variable(ctx, "la");
    auto D = ExactPoly::variable(ctx, "D");
    auto a = ExactPoly::variable(ctx, "a");

    ModuleElement v{{ExactPoly::constant(ctx, Rational(1))}};
    auto lv = action(M, M.algebra().generator("L"), v);
    CHECK(lv.coeffs[0] == pa + a + D * la);

    auto hv = action(M, M.algebra().generator("H"), v);
    CHECK(hv.coeffs[0] == ExactPoly::variable(ctx, "beta"));

    // sesquilinearity: (pa L)_la v = -la (pa + a + D la) v
    auto paL = scale(ExactPoly::variable(W0->context(), "pa"), M.algebra().generator("L"));
    auto plv = action(M, paL, v);
    CHECK(plv.coeffs[0] == -la * (pa + a + D * la));

    // H acts by zero whenever b is not pinned to 0
    auto Wm1 = shared_w(Rational(-1));
    auto M2 = make_rank_one_w(Wm1, {std::nullopt, std::nullopt, false, std::nullopt});
    ModuleElement v2{{ExactPoly::constant(M2.context(), Rational(1))}};
    CHECK(action(M2, M2.algebra().generator("H"), v2).coeffs[0].is_zero());

    // nonzero beta needs b pinned to exactly 0
    CHECK_THROWS_AS((void)make_rank_one_w(shared_w(make_rational(1, 2)),
                                          {std::nullopt, std::nullopt, true, std::nullopt}),
                    DeltaBranchError);
    CHECK_THROWS_AS((void)make_rank_one_w(shared_w(), pinned(1, 0, 5)), DeltaBranchError);
    // beta pinned to zero is the same as no beta at all
    CHECK_NOTHROW((void)make_rank_one_w(shared_w(), pinned(1, 0, 0)));
}

TEST_CASE("rank-one actions over SV") {
    auto M = make_rank_one_sv(std::nullopt, std::nullopt);
    auto ctx = M.context();
    ModuleElement v{{ExactPoly::constant(ctx, Rational(1))}};
    CHECK(action(M, M.algebra().generator("Y"), v).coeffs[0].is_zero());
    CHECK(action(M, M.algebra().generator("M"), v).coeffs[0].is_zero());

    auto M10 = make_rank_one_sv(Rational(1), Rational(0));
    ModuleElement v10{{ExactPoly::constant(M10.context(), Rational(1))}};
    auto lv = action(M10, M10.algebra().generator("L"), v10);
    CHECK(lv.coeffs[0] == ExactPoly::variable(M10.context(), "pa") +
                              ExactPoly::variable(M10.context(), "la"));
}

TEST_CASE("module axioms hold symbolically for the paper families") {
    // b = 0 with symbolic Delta, alpha, beta
    auto M0 = make_rank_one_w(shared_w(Rational(0)), {std::nullopt, std::nullopt, true, std::nullopt});
    CHECK(check_module_axioms(M0).pass());

    // symbolic generic b with H acting by zero
    auto Mb = make_rank_one_w(shared_w(), {std::nullopt, std::nullopt, false, std::nullopt});
    CHECK(check_module_axioms(Mb).pass());

    // SV with symbolic Delta, alpha
    CHECK(check_module_axioms(make_rank_one_sv(std::nullopt, std::nullopt)).pass());

    // pinned spot checks
    CHECK(check_module_axioms(make_rank_one_w(shared_w(Rational(0)), pinned(1, 0, 0))).pass());
    CHECK(check_module_axioms(make_rank_one_w(shared_w(Rational(2)), pinned(0, 3))).pass());
}

TEST_CASE("corrupted action fails the axioms with a nonzero residual") {
    auto W0 = shared_w(Rational(0));
    auto ctx = W0->context()->extend({"D", "a"});
    auto pa = ExactPoly::variable(ctx, "pa");
    auto la = ExactPoly::variable(ctx, "la");
    auto D = ExactPoly::variable(ctx, "D");
    auto a = ExactPoly::variable(ctx, "a");

    // L_la v = (pa + a + D la^2) v breaks the (L,L) axiom
    LambdaElement l_act{{pa + a + D * la * la}};
    LambdaElement h_act{{ExactPoly::zero(ctx)}};
    ConformalModule bad(W0, ctx, "corrupted", {"v"}, {{l_act}, {h_act}});
    auto report = check_module_axioms(bad);
    REQUIRE(!report.pass());
    CHECK(report.witnesses.front().site.find("module(L,L;v)") == 0);

    // non-vanishing confirmed at la=1, mu=2, D=1, a=0, pa=0
    auto w = report.witnesses.front().residual;
    for (auto [name, val] : {std::pair<const char*, long>{"la", 1},
                             {"mu", 2},
                             {"D", 1},
                             {"a", 0},
                             {"pa", 0}})
        w = w.substitute(name, ExactPoly::constant(ctx, Rational(val)));
    REQUIRE(w.as_rational());
    CHECK(*w.as_rational() != 0);
}

TEST_CASE("submodule divisibility test") {
    auto W0 = shared_w(Rational(0));

    // M_{0,alpha,0}: pa + alpha generates, with quotient pa + alpha + la on L
    auto M = make_rank_one_w(W0, pinned(0, 2, 0));
    auto ctx = M.context();
    auto pa = ExactPoly::variable(ctx, "pa");
    auto la = ExactPoly::variable(ctx, "la");
    auto f = pa + ExactPoly::constant(ctx, Rational(2));

    auto w = submodule_test(M, f);
    REQUIRE(w);
    CHECK(w->quotients.size() == 2);
    CHECK(w->quotients[0].first == "L");
    CHECK(w->quotients[0].second == pa + la + ExactPoly::constant(ctx, Rational(2)));
    CHECK(w->quotients[1].second.is_zero());
    // certificates multiply back exactly
    auto shifted = f.substitute(PolyContext::kPartial, pa + la);
    for (std::size_t g = 0; g < 2; ++g)
        CHECK(shifted * M.action_on(g, 0).coeffs[0] == f * w->quotients[g].second);

    // M_{1,alpha,0}: absent; the remainder at pa = -alpha is la^2 != 0
    auto M1 = make_rank_one_w(W0, pinned(1, 2, 0));
    CHECK(!submodule_test(M1, f));
    auto q_l = M1.action_on(0, 0).coeffs[0];
    auto target = f.substitute(PolyContext::kPartial, pa + la) * q_l;
    auto at_root = naive_eval(naive_of(target), {make_rational(-2), make_rational(1), Rational(0),
                                                 Rational(0), Rational(0), Rational(0),
                                                 Rational(0)});
    CHECK(at_root == 1); // la^2 at la=1

    // beta != 0 blocks every candidate
    auto Mb = make_rank_one_w(W0, pinned(0, 2, 5));
    CHECK(!submodule_test(Mb, f));
    CHECK(!submodule_test(Mb, f * f));

    CHECK_THROWS_AS((void)submodule_test(M, la + pa), DomainError);
    CHECK_THROWS_AS((void)submodule_test(M, pa * Rational(2)), DomainError);
    auto Msym = make_rank_one_w(W0, {std::nullopt, Rational(0), false, Rational(0)});
    CHECK_THROWS_AS((void)submodule_test(Msym, pa), NeedsPinnedParametersError);
}

TEST_CASE("rational root extraction") {
    auto ctx = PolyContext::make();
    auto pa = ExactPoly::variable(ctx, "pa");
    auto c = [&](long n, long d = 1) { return ExactPoly::constant(ctx, make_rational(n, d)); };

    // (pa - 2)(pa + 3/2) * 2 = 2 pa^2 - pa - 6
    auto p = (pa - c(2)) * (pa + c(3, 2)) * c(2);
    auto roots = rational_roots(p, PolyContext::kPartial);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == make_rational(-3, 2));
    CHECK(roots[1] == Rational(2));

    CHECK(rational_roots(pa * pa + c(1), PolyContext::kPartial).empty());
    auto with_zero = rational_roots(pa * pa + pa, PolyContext::kPartial);
    REQUIRE(with_zero.size() == 2);
    CHECK(with_zero[0] == Rational(-1));
    CHECK(with_zero[1] == Rational(0));
    CHECK_THROWS_AS((void)rational_roots(ExactPoly::zero(ctx), PolyContext::kPartial), DomainError);
}

TEST_CASE("complete submodule search") {
    auto W0 = shared_w(Rational(0));

    auto reducible = make_rank_one_w(W0, pinned(0, 2, 0));
    auto found = find_submodules(reducible);
    REQUIRE(found.size() == 1);
    CHECK(found[0].str() == "2 + pa");

    CHECK(find_submodules(make_rank_one_w(W0, pinned(3, 1, 0))).empty());
    CHECK(find_submodules(make_rank_one_w(W0, pinned(0, 1, 5))).empty());
    CHECK(find_submodules(make_rank_one_sv(Rational(0), Rational(4))).size() == 1);
    CHECK(find_submodules(make_rank_one_sv(Rational(2), Rational(0))).empty());
}

TEST_CASE("search never finds spurious generators near the true root") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> offset(-3, 3);
    std::uniform_int_distribution<int> degree(1, 3);
    std::uniform_int_distribution<long> param(-2, 2);

    for (int trial = 0; trial < 60; ++trial) {
        long d = param(rng), al = param(rng), be = param(rng);
        auto M = make_rank_one_w(shared_w(Rational(0)), pinned(d, al, be));
        auto ctx = M.context();
        auto pa = ExactPoly::variable(ctx, "pa");

        int deg = degree(rng);
        auto f = ExactPoly::constant(ctx, Rational(1));
        for (int k = 0; k < deg; ++k)
            f = f * (pa + ExactPoly::constant(ctx, Rational(al + offset(rng))));

        bool passes = submodule_test(M, f).has_value();
        bool should = (d == 0 && be == 0) && f == pa + ExactPoly::constant(ctx, Rational(al));
        CHECK(passes == should);
    }
}

TEST_CASE("irreducibility: analytic and search verdicts agree") {
    CHECK(is_irreducible(make_rank_one_w(shared_w(Rational(0)), pinned(0, 0, 1))).irreducible);
    CHECK(!is_irreducible(make_rank_one_w(shared_w(Rational(7)), pinned(0, 3))).irreducible);
    CHECK(is_irreducible(make_rank_one_sv(Rational(2), Rational(0))).irreducible);

    auto v = is_irreducible(make_rank_one_w(shared_w(Rational(0)), pinned(0, 4, 0)));
    CHECK(!v.irreducible);
    REQUIRE(v.submodule_generators.size() == 1);
    CHECK(v.submodule_generators[0].str() == "4 + pa");
    REQUIRE(v.certificates.size() == 1);

    // a module whose family metadata lies about the action trips the cross-check
    auto honest = make_rank_one_w(shared_w(Rational(0)), pinned(0, 1, 0));
    ConformalModule liar(honest.algebra_ptr(), honest.context(), "liar", {"v"},
                         {{honest.action_on(0, 0)}, {honest.action_on(1, 0)}},
                         ModuleFamily{ModuleFamily::Kind::w_rank1, pinned(1, 1, 0)});
    CHECK_THROWS_AS((void)is_irreducible(liar), InconsistencyError);

    CHECK_THROWS_AS(
        (void)is_irreducible(make_rank_one_w(shared_w(Rational(0)),
                                             {std::nullopt, Rational(0), false, Rational(0)})),
        NeedsPinnedParametersError);
}

TEST_CASE("classification sweep agrees with the theorem") {
    std::vector<Rational> bs{Rational(0), Rational(-1), make_rational(1, 2), Rational(2)};
    std::vector<long> vals{-2, 0, 1, 3};
    int checked = 0;
    for (const auto& b : bs) {
        auto W = shared_w(b);
        for (long d : vals)
            for (long al : vals)
                for (long be : vals) {
                    if (b != 0 && be != 0)
                        continue;
                    auto M = make_rank_one_w(W, pinned(d, al, be));
                    auto v = is_irreducible(M);
                    bool expected = d != 0 || (b == 0 && be != 0);
                    CHECK(v.irreducible == expected);
                    ++checked;
                }
    }
    for (long d : vals)
        for (long al : vals) {
            auto v = is_irreducible(make_rank_one_sv(Rational(d), Rational(al)));
            CHECK(v.irreducible == (d != 0));
            ++checked;
        }
    CHECK(checked >= 100);
}

TEST_CASE("the unique submodule is isomorphic to M_{1,alpha,0}") {
    CHECK(check_unique_submodule_iso(Rational(0)).pass());
    CHECK(check_unique_submodule_iso(make_rational(3, 2)).pass());
    CHECK(check_unique_submodule_iso(std::nullopt).pass()); // identically in alpha
}

TEST_CASE("quotient of M_{0,alpha,0} by its unique submodule is trivial") {
    // after dividing by (pa + alpha), every generator action reduces to zero
    auto M = make_rank_one_w(shared_w(Rational(0)), pinned(0, 3, 0));
    auto ctx = M.context();
    auto f = ExactPoly::variable(ctx, "pa") + ExactPoly::constant(ctx, Rational(3));
    for (GeneratorId g = 0; g < 2; ++g) {
        const auto& q = M.action_on(g, 0).coeffs[0];
        if (q.is_zero())
            continue;
        CHECK(exact_divide(q, f, PolyContext::kPartial));
    }
}

TEST_CASE("SV structural isomorphisms") {
    auto report = quotient_by_ideal_check();
    CHECK(report.pass());
}

TEST_CASE("submodule search requires rank one") {
    auto V = std::make_shared<ConformalAlgebra>(make_virasoro());
    auto ctx = V->context();
    LambdaElement zero2{{ExactPoly::zero(ctx), ExactPoly::zero(ctx)}};
    ConformalModule M2(V, ctx, "rank2", {"v1", "v2"}, {{zero2, zero2}});
    CHECK_THROWS_AS((void)find_submodules(M2), DomainError);
    CHECK_THROWS_AS((void)submodule_test(M2, ExactPoly::variable(ctx, "pa")), DomainError);
}

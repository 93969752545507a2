#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_helpers.hpp"

using namespace homgb;
using homgb::testing::TestRng;
using homgb::testing::socle_dimension_brute;

namespace {

RingDescriptor<GFp> ring(std::vector<std::string> vars, std::vector<std::string> quotient = {}) {
    PolyRing<GFp> P(GFp(32003), MonomialOrder::grevlex(), vars);
    std::vector<Polynomial<GFp>> q;
    for (const auto& s : quotient) q.push_back(P.parse(s));
    return RingDescriptor<GFp>(P, q);
}

PrimeIdeal<GFp> prime(const RingDescriptor<GFp>& R, std::vector<std::string> gens) {
    std::vector<Polynomial<GFp>> g;
    for (const auto& s : gens) g.push_back(R.parse(s));
    return make_prime(Ideal<GFp>(R, g));
}

}  // namespace

TEST_CASE("generic_rank examples") {
    auto R = ring({"x"});
    CHECK(generic_rank(free_module(R, 3)) == 3);
    CHECK(generic_rank(cyclic_module(Ideal<GFp>(R, {R.parse("x")}))) == 0);
    std::vector<FreeVec<GFp>> cols{{R.parse("x"), R.zero_poly()},
                                   {R.zero_poly(), R.one_poly()}};
    CHECK(generic_rank(make_module(R, 2, cols)) == 0);
}

TEST_CASE("matrix rank over quotient domains uses the residue arithmetic") {
    // over R/(x,w) in the hypersurface ring, x is zero but y is not
    auto R4 = ring({"x", "y", "z", "w"}, {"x*y - z*w", "x", "w"});
    std::vector<FreeVec<GFp>> cols{{R4.parse("x"), R4.parse("y")},
                                   {R4.parse("w"), R4.parse("z")}};
    CHECK(matrix_rank_over_domain(R4, cols, 2) == 1);
    std::vector<FreeVec<GFp>> cols2{{R4.parse("y"), R4.zero_poly()},
                                    {R4.parse("y*z"), R4.parse("z^2")}};
    CHECK(matrix_rank_over_domain(R4, cols2, 2) == 2);
}

TEST_CASE("rank over a quadric cone falls back to pure symbolic bordering") {
    // leading term xy has degree two, so no evaluation point is available
    // and the bordering search runs unseeded
    auto R = ring({"x", "y", "z"}, {"x*y - z^2"});
    std::vector<FreeVec<GFp>> cols{{R.parse("x"), R.parse("z")}, {R.parse("z"), R.parse("y")}};
    // the determinant xy - z^2 vanishes in R, so rank is 1
    CHECK(matrix_rank_over_domain(R, cols, 2) == 1);
    std::vector<FreeVec<GFp>> cols2{{R.parse("x"), R.parse("z")}, {R.parse("z"), R.parse("y + x")}};
    CHECK(matrix_rank_over_domain(R, cols2, 2) == 2);
}

TEST_CASE("bass_number examples") {
    SUBCASE("mu^0(p, R/p) = 1") {
        auto R = ring({"x", "y"});
        for (auto gens : std::vector<std::vector<std::string>>{{"x"}, {"x", "y"}}) {
            auto p = prime(R, gens);
            CHECK(bass_number(0, p, residue_module(p)) == 1);
        }
    }
    SUBCASE("regular ring: mu^i(m, R) is a delta at the dimension") {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        auto Rf = free_module(R, 1);
        CHECK(bass_number(0, m, Rf) == 0);
        CHECK(bass_number(1, m, Rf) == 0);
        CHECK(bass_number(2, m, Rf) == 1);
    }
    SUBCASE("socle dimension of K[x,y]/m^n, against enumeration") {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        Ideal<GFp> mi(R, {R.parse("x"), R.parse("y")});
        for (std::uint32_t n = 1; n <= 4; ++n) {
            auto M = cyclic_module(ideal_power(mi, n));
            CHECK(bass_number(0, m, M) == socle_dimension_brute(n));
            CHECK(socle_dimension_brute(n) == n);
        }
    }
}

TEST_CASE("betti_number examples") {
    auto R = ring({"x", "y"});
    auto m = prime(R, {"x", "y"});
    SUBCASE("beta_0(p, R) = 1") {
        CHECK(betti_number(0, m, free_module(R, 1)) == 1);
        CHECK(betti_number(0, prime(R, {"x"}), free_module(R, 1)) == 1);
    }
    SUBCASE("Koszul: beta_i(m, k) = C(2, i)") {
        auto k = residue_module(m);
        std::vector<std::size_t> expect{1, 2, 1, 0};
        for (std::size_t i = 0; i < expect.size(); ++i) CHECK(betti_number(i, m, k) == expect[i]);
    }
    SUBCASE("Hilbert-Burch: beta_1(m, R/m^n) = n + 1, two routes") {
        Ideal<GFp> mi(R, {R.parse("x"), R.parse("y")});
        for (std::uint32_t n = 1; n <= 4; ++n) {
            auto M = cyclic_module(ideal_power(mi, n));
            CHECK(betti_number(1, m, M) == n + 1);
            // independent route: ranks of the minimal graded resolution,
            // one step longer than the degrees being read off
            auto res = minimize_resolution(free_resolution(M, 3, true));
            CHECK(res.ranks[1] == n + 1);
            CHECK(res.ranks[2] == n);
            CHECK(res.ranks[3] == 0);
        }
    }
}

TEST_CASE("depth_at examples") {
    SUBCASE("the hypersurface ring is Cohen-Macaulay of depth 3 at m") {
        auto R = ring({"x", "y", "z", "w"}, {"x*y - z*w"});
        auto m = prime(R, {"x", "y", "z", "w"});
        CHECK(depth_at(m, free_module(R, 1)) == DimensionValue::finite(3));
    }
    SUBCASE("regular ring has full depth") {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        CHECK(depth_at(m, free_module(R, 1)) == DimensionValue::finite(2));
    }
    SUBCASE("a field has depth zero") {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        CHECK(depth_at(m, residue_module(m)) == DimensionValue::finite(0));
    }
    SUBCASE("zero localization is reported as such") {
        auto R = ring({"x", "y"});
        auto p = prime(R, {"x"});
        // (R/y)_p = 0 because y acts invertibly at p
        auto M = cyclic_module(Ideal<GFp>(R, {R.parse("y")}));
        CHECK(depth_at(p, M) == DimensionValue::zero_module());
    }
}

TEST_CASE("height_upper examples") {
    auto R2 = ring({"x", "y"});
    CHECK(height_upper(prime(R2, {"x", "y"})) == 2);

    auto R3 = ring({"x", "y", "z"}, {"x^2*y", "x^2*z"});
    CHECK(height_upper(prime(R3, {"y", "z"})) == 1);  // documented overestimate: true height 0

    auto R4 = ring({"x", "y", "z", "w"}, {"x*y - z*w"});
    CHECK(height_upper(prime(R4, {"x", "w"})) == 1);
}

TEST_CASE("pd_at examples") {
    SUBCASE("two-component ring, localization at (x,y)") {
        auto R = ring({"x", "y", "z"}, {"x^2*y", "x^2*z"});
        auto p = prime(R, {"x", "y"});
        auto x = R.parse("x");
        // n = 3 >= m = 2: free after localization
        CHECK(pd_at(p, cyclic_module(Ideal<GFp>(R, {R.power(x, 3)})), height_upper(p) + 1) ==
              DimensionValue::finite(0));
        // n = 1 < m = 2: infinite, certified
        CHECK(pd_at(p, cyclic_module(Ideal<GFp>(R, {x})), height_upper(p) + 1) ==
              DimensionValue::infinite());
    }
    SUBCASE("free modules have pd 0") {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        CHECK(pd_at(m, free_module(R, 2), height_upper(m) + 1) == DimensionValue::finite(0));
    }
    SUBCASE("residue field over a regular ring") {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        CHECK(pd_at(m, residue_module(m), height_upper(m) + 1) == DimensionValue::finite(2));
    }
    SUBCASE("undersized windows report honest non-vanishing") {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        CHECK(pd_at(m, residue_module(m), 1) == DimensionValue::no_vanishing(1));
    }
}

TEST_CASE("id_at examples") {
    SUBCASE("two-component ring") {
        auto R = ring({"x", "y", "z"}, {"x^2*y", "x^2*z"});
        auto p = prime(R, {"x", "y"});
        auto q = prime(R, {"x", "y", "z"});
        auto x = R.parse("x");
        for (std::uint64_t n = 2; n <= 3; ++n) {
            auto M = cyclic_module(Ideal<GFp>(R, {R.power(x, n)}));
            CHECK(id_at(p, M) == DimensionValue::finite(1));
        }
        for (std::uint64_t n = 1; n <= 3; ++n) {
            auto M = cyclic_module(Ideal<GFp>(R, {R.power(x, n)}));
            CHECK(id_at(q, M) == DimensionValue::infinite());
        }
    }
    SUBCASE("id of the residue field over a regular local ring is the dimension") {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        CHECK(id_at(m, residue_module(m)) == DimensionValue::finite(2));
    }
}

TEST_CASE("grade_of examples") {
    auto R = ring({"x", "y", "z"});
    CHECK(grade_of(Ideal<GFp>(R, {R.parse("y"), R.parse("z")}), free_module(R, 1)) ==
          DimensionValue::finite(2));

    auto R1 = ring({"x"}, {});
    CHECK(grade_of(Ideal<GFp>(R1, {R1.parse("x")}), free_module(R1, 1)) ==
          DimensionValue::finite(1));

    auto Rq = ring({"x"}, {"x^2"});  // K[x]/x^2, module R/x
    CHECK(grade_of(Ideal<GFp>(Rq, {Rq.parse("x")}),
                   cyclic_module(Ideal<GFp>(Rq, {Rq.parse("x")}))) == DimensionValue::finite(0));

    // M = JM: the convention applies
    auto R2 = ring({"x", "y"});
    CHECK(grade_of(Ideal<GFp>::unit(R2), free_module(R2, 1)) == DimensionValue::zero_module());
}

TEST_CASE("Betti specialization is monotone along the shipped chains") {
    auto R = ring({"x", "y"});
    auto p = prime(R, {"x"});
    auto q = prime(R, {"x", "y"});
    Ideal<GFp> mi(R, {R.parse("x"), R.parse("y")});
    std::vector<PresentedModule<GFp>> mods{free_module(R, 1),
                                           cyclic_module(ideal_power(mi, 2)),
                                           cyclic_module(Ideal<GFp>(R, {R.parse("x^2")}))};
    for (const auto& M : mods)
        for (std::size_t i = 0; i <= 4; ++i) CHECK(betti_number(i, p, M) <= betti_number(i, q, M));
}

TEST_CASE("Bass specialization on a curated chain of known relative height") {
    // p = (x) inside q = (x,y) in K[x,y]: height(q/p) = 1 by construction
    auto R = ring({"x", "y"});
    auto p = prime(R, {"x"});
    auto q = prime(R, {"x", "y"});
    Ideal<GFp> mi(R, {R.parse("x"), R.parse("y")});
    std::vector<PresentedModule<GFp>> mods{free_module(R, 1), cyclic_module(ideal_power(mi, 2))};
    for (const auto& M : mods)
        for (std::size_t i = 0; i <= 3; ++i)
            CHECK(bass_number(i, p, M) <= bass_number(i + 1, q, M));
}

TEST_CASE("Bass numbers shift by the dimension drop when the fiber is nice") {
    // mu^1((x), R) = mu^2(m, R) = 1 over K[x,y]; the hypotheses hold: the
    // Ext modules against R/(x) are free over R/(x) in the checked range
    auto R = ring({"x", "y"});
    auto p = prime(R, {"x"});
    auto m = prime(R, {"x", "y"});
    auto Rf = free_module(R, 1);
    CHECK(bass_number(1, p, Rf) == 1);
    CHECK(bass_number(2, m, Rf) == 1);
    auto RP = residue_module(p);
    for (std::size_t i = 0; i <= 2; ++i) {
        auto E = base_change_quotient(ext_module(i, RP, Rf), p.ideal);
        auto Emin = minimal_presentation(E);
        // free over the domain R/p: minimal presentation has no relations,
        // so generic rank equals the minimal generator count
        CHECK(Emin.relations.empty());
        CHECK(generic_rank(E) == Emin.gens);
    }
}

TEST_CASE("consistency between id_at, depth and the Bass sequence") {
    auto R = ring({"x", "y", "z"}, {"x^2*y", "x^2*z"});
    auto p = prime(R, {"x", "y"});
    auto M = cyclic_module(Ideal<GFp>(R, {R.parse("x^2")}));
    DimensionValue v = id_at(p, M);
    REQUIRE(v.is_finite());
    CHECK(bass_number(static_cast<std::size_t>(v.value), p, M) != 0);
    for (std::int64_t i = v.value + 1; i <= height_upper(p) + 1; ++i)
        CHECK(bass_number(static_cast<std::size_t>(i), p, M) == 0);
}

TEST_CASE("pd_at agrees with the Betti sequence") {
    auto R = ring({"x", "y", "z"}, {"x^2*y", "x^2*z"});
    auto p = prime(R, {"x", "y"});
    auto M = cyclic_module(Ideal<GFp>(R, {R.parse("x^2")}));
    DimensionValue v = pd_at(p, M, height_upper(p) + 1);
    REQUIRE(v.is_finite());
    CHECK(betti_number(static_cast<std::size_t>(v.value), p, M) != 0);
    CHECK(betti_number(static_cast<std::size_t>(v.value) + 1, p, M) == 0);
}

TEST_CASE("prime construction checks") {
    auto R = ring({"x", "y"});
    CHECK_THROWS(make_prime(Ideal<GFp>::unit(R)));
    CHECK_THROWS(make_prime(Ideal<GFp>(R, {R.parse("x - 1"), R.parse("x")})));
    // the sampled domain spot-check catches blatant zero divisors
    CHECK_THROWS(make_prime(Ideal<GFp>(R, {R.parse("x*y")})));
    CHECK_NOTHROW(make_prime(Ideal<GFp>(R, {R.parse("x")})));
    // zero ideal of a domain is allowed
    CHECK_NOTHROW(make_prime(Ideal<GFp>::zero(R)));
}

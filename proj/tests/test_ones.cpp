#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fqzeta/ones_series.hpp"
#include "fqzeta/special.hpp"
#include "test_util.hpp"

using namespace fqzeta;
using fqzeta::testutil::make_poly;

TEST_CASE("base cases of the recursion") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto f = q == 4 ? field_create(2, 2) : field_create(q, 1);
        CHECK(ones_series(f.get(), 0).degree() == 0);
        CHECK(ones_expand(ones_series(f.get(), 0), 1000).is_one());
        // 1 <= s < q-1: the recursion's index sum is empty
        for (std::uint32_t s = 1; s + 1 < q; ++s) {
            auto series = ones_series(f.get(), s);
            CHECK(series.degree() == 0);
            CHECK(ones_expand(series, 1000).is_one());
        }
        // s = q-1: exactly 1 - t0
        auto series = ones_series(f.get(), q - 1);
        MultiPoly got = ones_expand(series, 1000);
        MultiPoly want(f.get(), q);
        std::vector<Exp> e0(q, 0), e1(q, 0);
        e1[0] = 1;
        want.push_term(e0, 1);
        want.push_term(e1, f->neg(1));
        want.normalize();
        CHECK(got == want);
    }
}

TEST_CASE("frozen small expansions over F_2") {
    auto f2 = field_create(2, 1);
    CHECK(ones_expand(ones_series(f2.get(), 1), 1000) ==
          make_poly(f2.get(), 2, {{{0, 0}, 1}, {{1, 0}, 1}}));
    // z(1,1,t0) = 1 + t0(1 + t1 + t2) + t0^2(t1 + t2)
    CHECK(ones_expand(ones_series(f2.get(), 2), 1000) ==
          make_poly(f2.get(), 3,
                    {{{0, 0, 0}, 1},
                     {{1, 0, 0}, 1},
                     {{1, 1, 0}, 1},
                     {{1, 0, 1}, 1},
                     {{2, 1, 0}, 1},
                     {{2, 0, 1}, 1}}));
}

TEST_CASE("expansion matches the brute-force sum") {
    for (std::uint32_t q : {2u, 3u, 4u}) {
        auto f = q == 4 ? field_create(2, 2) : field_create(q, 1);
        for (std::uint32_t s = 0; s <= 4; ++s) {
            MultiPoly rec = ones_expand(ones_series(f.get(), s), 1u << 20);
            SpecialPoly ref = z_direct_reference(BetaTuple::ones(s), f);
            CHECK(rec == ref.poly);
        }
    }
}

TEST_CASE("degree equals floor(s/(q-1)) in compressed form") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto f = q == 4 ? field_create(2, 2) : field_create(q, 1);
        for (std::uint32_t s = 0; s <= 12; ++s)
            CHECK(ones_series(f.get(), s).degree() == std::int64_t(s / (q - 1)));
    }
}

TEST_CASE("expansion counts and budgets") {
    auto f2 = field_create(2, 1);
    auto series = ones_series(f2.get(), 3);
    Nat n = series.expanded_term_count();
    CHECK(ones_expand(series, 1u << 20).term_count() <= n); // cancellation cannot add terms
    CHECK(n == ones_expand(series, 1u << 20).term_count()); // orbits never collide, so equality

    // s = 12 over F_2 expands to billions of terms: refused, but the
    // compressed degree is still available
    auto big = ones_series(f2.get(), 12);
    CHECK(big.degree() == 12);
    CHECK(big.expanded_term_count() > Nat("1000000000"));
    CHECK_THROWS_AS(ones_expand(big, 1u << 24), BudgetError);
}

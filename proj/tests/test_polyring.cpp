#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "fqzeta/polyring.hpp"
#include "test_util.hpp"

using namespace fqzeta;
using fqzeta::testutil::make_poly;

namespace {

MultiPoly random_poly(const FieldCtx* f, std::uint32_t nvars, std::mt19937_64& rng, int terms = 5,
                      Exp max_exp = 4) {
    MultiPoly out(f, nvars);
    std::vector<Exp> key(nvars);
    for (int t = 0; t < terms; ++t) {
        for (auto& e : key) e = Exp(rng() % (max_exp + 1));
        out.push_term(key, std::uint16_t(rng() % f->q));
    }
    out.normalize();
    return out;
}

} // namespace

TEST_CASE("normalization and equality") {
    auto f3 = field_create(3, 1);
    MultiPoly a(f3.get(), 2);
    a.push_term(std::vector<Exp>{1, 0}, 2);
    a.push_term(std::vector<Exp>{1, 0}, 1); // cancels to 0
    a.push_term(std::vector<Exp>{0, 1}, 1);
    a.normalize();
    CHECK(a.term_count() == 1);
    CHECK(a == make_poly(f3.get(), 2, {{{0, 1}, 1}}));
}

TEST_CASE("ring operations") {
    auto f2 = field_create(2, 1);
    MultiPoly t1p1 = make_poly(f2.get(), 2, {{{0, 1}, 1}, {{0, 0}, 1}});
    CHECK(poly_mul(t1p1, t1p1) == make_poly(f2.get(), 2, {{{0, 2}, 1}, {{0, 0}, 1}}));

    auto f5 = field_create(5, 1);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        MultiPoly P = random_poly(f5.get(), 3, rng);
        CHECK(poly_add(P, poly_neg(P)).is_zero());
        CHECK(poly_pow(P, 0).is_one());
        CHECK(poly_pow(P, 3) == poly_mul(P, poly_mul(P, P)));
    }
}

TEST_CASE("degrees") {
    auto f3 = field_create(3, 1);
    CHECK(MultiPoly(f3.get(), 2).degree_in_t0() == -1);
    CHECK(make_poly(f3.get(), 2, {{{0, 0}, 1}, {{1, 0}, 2}}).degree_in_t0() == 1);
    CHECK(make_poly(f3.get(), 2, {{{0, 5}, 1}}).degree_in_t0() == 0);
    CHECK(make_poly(f3.get(), 2, {{{0, 5}, 1}}).degree_in_var(1) == 5);
}

TEST_CASE("substitution is a ring homomorphism") {
    auto f4 = field_create(2, 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        MultiPoly P = random_poly(f4.get(), 3, rng), Q = random_poly(f4.get(), 3, rng);
        std::vector<VarTarget> map(3);
        map[0] = VarTarget::keep();
        map[1] = VarTarget::var_power(2, 1 + rng() % 3);
        map[2] = VarTarget::constant(std::uint16_t(rng() % 4));
        CHECK(substitute(poly_mul(P, Q), map) == poly_mul(substitute(P, map), substitute(Q, map)));
        CHECK(substitute(poly_add(P, Q), map) == poly_add(substitute(P, map), substitute(Q, map)));
        std::vector<VarTarget> id(3);
        CHECK(substitute(P, id) == P);
    }
}

TEST_CASE("substitution into an extension") {
    auto f2 = field_create(2, 1);
    auto f4 = field_create(2, 2);
    Embedding emb = field_embed(f2, f4);
    // (t0 + t1) with t1 -> x (code 2) becomes t0 + x
    MultiPoly P = make_poly(f2.get(), 2, {{{1, 0}, 1}, {{0, 1}, 1}});
    std::vector<VarTarget> map(2);
    map[1] = VarTarget::constant(2);
    MultiPoly img = substitute_embed(P, map, emb);
    CHECK(img == make_poly(f4.get(), 2, {{{1, 0}, 1}, {{0, 0}, 2}}));
}

TEST_CASE("frobenius power agrees with the generic power") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        auto f = field_create(p, e);
        std::mt19937_64 rng(p * 10 + e);
        for (int t = 0; t < 20; ++t) {
            MultiPoly P = random_poly(f.get(), 2, rng, 4, 3);
            CHECK(frobenius_power(P, 1) == poly_pow(P, Nat(p)));
            CHECK(frobenius_power(P, 2) == poly_pow(P, Nat(p) * p));
        }
    }
}

TEST_CASE("t0 root multiplicity by exact division") {
    auto f3 = field_create(3, 1);
    MultiPoly one_minus_t0 = make_poly(f3.get(), 2, {{{0, 0}, 1}, {{1, 0}, 2}});
    CHECK(multiplicity_at_t0(one_minus_t0, 1) == 1);
    CHECK(multiplicity_at_t0(poly_mul(one_minus_t0, one_minus_t0), 1) == 2);
    CHECK(multiplicity_at_t0(MultiPoly::constant(f3.get(), 2, 1), 1) == 0);
    CHECK_THROWS_AS(multiplicity_at_t0(MultiPoly(f3.get(), 2), 1), InvalidArgument);

    // random products of known multiplicity, including multiplicity >= p
    // (would break a derivative-based criterion in characteristic p)
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        std::uint16_t c = std::uint16_t(rng() % 3);
        std::uint32_t want = rng() % 5;
        MultiPoly factor = make_poly(f3.get(), 2, {{{1, 0}, 1}, {{0, 0}, f3->neg(c)}});
        MultiPoly P = random_poly(f3.get(), 2, rng, 3, 2);
        if (P.is_zero() || !eval_t0(P, c).is_zero()) {
            MultiPoly prod = P.is_zero() ? MultiPoly::constant(f3.get(), 2, 1) : P;
            if (eval_t0(prod, c).is_zero()) continue;
            for (std::uint32_t i = 0; i < want; ++i) prod = poly_mul(prod, factor);
            CHECK(multiplicity_at_t0(prod, c) == want);
        }
    }
}

TEST_CASE("monic enumeration") {
    auto f2 = field_create(2, 1);
    MonicEnumerator e0(f2.get(), 0);
    CHECK(e0.count() == 1);
    CHECK(e0.at(0).coeffs == std::vector<std::uint16_t>{1});

    MonicEnumerator e1(f2.get(), 1);
    CHECK(e1.count() == 2);
    CHECK(e1.at(0).coeffs == std::vector<std::uint16_t>{0, 1});
    CHECK(e1.at(1).coeffs == std::vector<std::uint16_t>{1, 1});

    auto f3 = field_create(3, 1);
    MonicEnumerator e2(f3.get(), 2);
    CHECK(e2.count() == 9);
    std::set<std::vector<std::uint16_t>> seen;
    for (std::uint64_t k = 0; k < 9; ++k) {
        auto a = e2.at(k);
        CHECK(a.coeffs.back() == 1);
        seen.insert(a.coeffs);
    }
    CHECK(seen.size() == 9);

    // lower coefficients vary fastest, through the canonical element order
    auto f4 = field_create(2, 2);
    MonicEnumerator e4(f4.get(), 1);
    CHECK(e4.at(0).coeffs == std::vector<std::uint16_t>{0, 1});
    CHECK(e4.at(1).coeffs == std::vector<std::uint16_t>{2, 1});
    CHECK(e4.at(2).coeffs == std::vector<std::uint16_t>{1, 1});
    CHECK(e4.at(3).coeffs == std::vector<std::uint16_t>{3, 1});

    CHECK_THROWS_AS(check_enumeration_budget(*f2, 24, 10'000'000), BudgetError);
    try {
        check_enumeration_budget(*f2, 24, 10'000'000);
    } catch (const BudgetError& e) {
        CHECK(e.degree == 24);
    }

    // union over d <= D has (q^(D+1)-1)/(q-1) elements
    std::set<std::vector<std::uint16_t>> all;
    for (std::uint32_t d = 0; d <= 3; ++d) {
        MonicEnumerator en(f3.get(), d);
        for (std::uint64_t k = 0; k < en.count(); ++k) all.insert(en.at(k).coeffs);
    }
    CHECK(all.size() == (81 - 1) / 2);
}

TEST_CASE("chi transport") {
    auto f3 = field_create(3, 1);
    MonicUPoly one{f3.get(), {1}};
    CHECK(chi_eval(one, 1, 3).is_one());
    MonicUPoly theta{f3.get(), {0, 1}};
    CHECK(chi_eval(theta, 2, 3) == make_poly(f3.get(), 3, {{{0, 0, 1}, 1}}));
    MonicUPoly sq{f3.get(), {1, 0, 1}}; // theta^2 + 1
    CHECK(chi_eval(sq, 1, 2) == make_poly(f3.get(), 2, {{{0, 2}, 1}, {{0, 0}, 1}}));
    CHECK_THROWS_AS(chi_eval(theta, 0, 2), InvalidArgument);
    CHECK_THROWS_AS(chi_eval(theta, 2, 2), InvalidArgument);
}

TEST_CASE("variable reindexing") {
    auto f3 = field_create(3, 1);
    MultiPoly P = make_poly(f3.get(), 3, {{{1, 0, 2}, 1}});
    MultiPoly Q = reindex_vars(P, 2, {0, 2});
    CHECK(Q == make_poly(f3.get(), 2, {{{1, 2}, 1}}));
    CHECK_THROWS_AS(reindex_vars(P, 1, {0}), InvalidArgument);
}

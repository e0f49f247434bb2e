#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fqzeta/field.hpp"

using namespace fqzeta;

namespace {

// Independent irreducibility oracle: a monic polynomial of degree <= 3 over
// F_p is irreducible iff it has no root; degree 2 enumerated exhaustively.
bool has_root(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

} // namespace

TEST_CASE("deterministic moduli") {
    CHECK(field_create(2, 1)->modulus == std::vector<std::uint32_t>{0, 1});
    CHECK(field_create(2, 2)->modulus == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(field_create(3, 2)->modulus == std::vector<std::uint32_t>{1, 0, 1});
    // x^2+1 is reducible mod 5 (2^2 = 4 = -1), so the scan moves on
    CHECK(field_create(5, 2)->modulus == std::vector<std::uint32_t>{1, 1, 1});

    // x^2+x+1 is the only monic irreducible quadratic over F_2: exhaustive.
    int count = 0;
    for (std::uint32_t a0 = 0; a0 < 2; ++a0)
        for (std::uint32_t a1 = 0; a1 < 2; ++a1)
            if (!has_root({a0, a1, 1}, 2)) ++count;
    CHECK(count == 1);

    // Lexicographic minimality of the F_9 and F_25 moduli by scan.
    for (std::uint32_t p : {3u, 5u}) {
        std::vector<std::uint32_t> least;
        for (std::uint32_t a0 = 0; a0 < p && least.empty(); ++a0)
            for (std::uint32_t a1 = 0; a1 < p && least.empty(); ++a1)
                if (!has_root({a0, a1, 1}, p)) least = {a0, a1, 1};
        CHECK(field_create(p, 2)->modulus == least);
    }

    // Two independent constructions agree structurally.
    FieldCtx a(3, 3, FieldCtx::kDefaultMaxQ), b(3, 3, FieldCtx::kDefaultMaxQ);
    CHECK(a.modulus == b.modulus);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(field_create(4, 1), InvalidArgument);
    CHECK_THROWS_AS(field_create(2, 0), InvalidArgument);
    CHECK_THROWS_AS(field_create(2, 17), InvalidArgument); // 2^17 over the default bound
    CHECK_THROWS_AS((FieldCtx{2, 5, 16}), InvalidArgument);
}

TEST_CASE("basic arithmetic values") {
    auto f3 = field_create(3, 1);
    CHECK(f3->mul(2, 2) == 1);

    auto f4 = field_create(2, 2);
    // x has code 2; x*x = x+1 (code 3) under x^2+x+1
    CHECK(f4->mul(2, 2) == 3);

    auto f9 = field_create(3, 2);
    // x has code 3; x*x = -1 = 2 under x^2+1
    CHECK(f9->mul(3, 3) == 2);
}

TEST_CASE("field axioms exhaustively for small q") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {2, 6}}) {
        auto f = field_create(p, e);
        std::uint32_t q = f->q;
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(f->add(a, 0) == a);
            CHECK(f->mul(a, 1) == a);
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a) CHECK(f->mul(a, f->inv(a)) == 1);
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                // table path agrees with the generic path
                CHECK(f->add(a, b) == f->add_generic(std::uint16_t(a), std::uint16_t(b)));
                CHECK(f->mul(a, b) == f->mul_generic(std::uint16_t(a), std::uint16_t(b)));
                for (std::uint32_t c = 0; c < q; c += (q > 16 ? 7 : 1)) {
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("frobenius fixes the field") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
        auto f = field_create(p, e);
        for (std::uint32_t a = 0; a < f->q; ++a) {
            std::uint16_t x = std::uint16_t(a);
            for (std::uint32_t i = 0; i < e; ++i) x = f->pow_u64(x, p);
            CHECK(x == a);
        }
    }
}

TEST_CASE("canonical element order") {
    auto f4 = field_create(2, 2);
    // coordinate vectors low-index-first: (0,0) < (0,1) < (1,0) < (1,1)
    CHECK(f4->element_at_rank(0) == 0);
    CHECK(f4->element_at_rank(1) == 2); // x
    CHECK(f4->element_at_rank(2) == 1); // 1
    CHECK(f4->element_at_rank(3) == 3); // 1+x
    for (std::uint32_t c = 0; c < 4; ++c) CHECK(f4->element_at_rank(f4->rank_of(std::uint16_t(c))) == c);
}

TEST_CASE("pow with big exponents") {
    auto f9 = field_create(3, 2);
    Nat huge("123456789123456789123456789");
    for (std::uint32_t a = 1; a < 9; ++a) {
        std::uint16_t direct = 1;
        Nat r = huge % 8;
        for (Nat i = 0; i < r; ++i) direct = f9->mul(direct, std::uint16_t(a));
        CHECK(f9->pow(std::uint16_t(a), huge) == direct);
    }
    CHECK(f9->pow(0, Nat(0)) == 1);
    CHECK(f9->pow(0, huge) == 0);
    CHECK_THROWS_AS(f9->inv(0), InvalidArgument);
}

TEST_CASE("embeddings") {
    auto f2 = field_create(2, 1);
    auto f4 = field_create(2, 2);
    auto f16 = field_create(2, 4);

    Embedding up = field_embed(f2, f4);
    CHECK(up.map(0) == 0);
    CHECK(up.map(1) == 1);

    Embedding self = field_embed(f4, f4);
    for (std::uint32_t a = 0; a < 4; ++a) CHECK(self.map(std::uint16_t(a)) == a);

    // generator of F_4 goes to the canonically least root of x^2+x+1 in F_16.
    // Under x^4+x^3+1 the two roots are x^3+x+1 (coords (1,1,0,1)) and
    // x^3+x (coords (0,1,0,1)); the latter is canonically least, code 10.
    CHECK(f16->modulus == std::vector<std::uint32_t>{1, 0, 0, 1, 1});
    Embedding big = field_embed(f4, f16);
    CHECK(big.map(f4->generator()) == 10);

    // homomorphism, exhaustively
    for (auto [src, dst] : std::vector<std::pair<FieldPtr, FieldPtr>>{{f2, f4}, {f4, f16}, {f2, f16}}) {
        Embedding emb = field_embed(src, dst);
        for (std::uint32_t a = 0; a < src->q; ++a)
            for (std::uint32_t b = 0; b < src->q; ++b) {
                CHECK(emb.map(src->add(std::uint16_t(a), std::uint16_t(b))) ==
                      dst->add(emb.map(std::uint16_t(a)), emb.map(std::uint16_t(b))));
                CHECK(emb.map(src->mul(std::uint16_t(a), std::uint16_t(b))) ==
                      dst->mul(emb.map(std::uint16_t(a)), emb.map(std::uint16_t(b))));
            }
        CHECK(emb.map(1) == 1);
    }

    CHECK_THROWS_AS(field_embed(f4, field_create(2, 3)), InvalidArgument);
    CHECK_THROWS_AS(field_embed(field_create(3, 1), f4), InvalidArgument);
}

TEST_CASE("FqElem operators") {
    auto f9 = field_create(3, 2);
    FqElem x(f9.get(), 3), two(f9.get(), 2);
    CHECK((x * x) == two * FqElem(f9.get(), 1));
    CHECK((x + (-x)).is_zero());
    CHECK((x * x.inv()) == FqElem(f9.get(), 1));
    auto f4 = field_create(2, 2);
    CHECK_THROWS_AS((void)(x + FqElem(f4.get(), 1)), ContextMismatch);
}

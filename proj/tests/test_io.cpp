#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>

#include "fqzeta/io.hpp"
#include "test_util.hpp"

using namespace fqzeta;
using fqzeta::testutil::make_poly;

TEST_CASE("polynomial json round trip") {
    std::mt19937_64 rng(51);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        auto f = field_create(p, e);
        for (int t = 0; t < 25; ++t) {
            MultiPoly P(f.get(), 3);
            std::vector<Exp> key(3);
            for (int i = 0; i < 6; ++i) {
                for (auto& x : key) x = Exp(rng() % 5);
                P.push_term(key, std::uint16_t(rng() % f->q));
            }
            P.normalize();
            Json j = poly_to_json(P);
            CHECK(poly_from_json(j) == P);
            // serialization is deterministic
            CHECK(j.dump() == poly_to_json(P).dump());
        }
    }
}

TEST_CASE("json schema fields") {
    auto f9 = field_create(3, 2);
    MultiPoly P = make_poly(f9.get(), 2, {{{1, 0}, 3}, {{0, 0}, 1}});
    Json j = poly_to_json(P);
    CHECK(j["p"] == 3);
    CHECK(j["e"] == 2);
    CHECK(j["modulus"] == Json::array({1, 0, 1}));
    CHECK(j["num_vars"] == 2);
    CHECK(j["terms"].size() == 2);
    // graded-lex: the constant term first
    CHECK(j["terms"][0]["exp"] == Json::array({0, 0}));
    CHECK(j["terms"][0]["coeff"] == Json::array({1, 0}));
    CHECK(j["terms"][1]["coeff"] == Json::array({0, 1})); // x has coords (0,1)
}

TEST_CASE("pretty printing") {
    auto f3 = field_create(3, 1);
    CHECK(pretty(MultiPoly(f3.get(), 2)) == "0");
    CHECK(pretty(make_poly(f3.get(), 2, {{{0, 0}, 1}})) == "1");
    CHECK(pretty(make_poly(f3.get(), 2, {{{0, 0}, 1}, {{1, 0}, 2}})) == "1 + 2*t0");
    CHECK(pretty(make_poly(f3.get(), 2, {{{2, 1}, 1}})) == "t0^2*t1");
    auto f4 = field_create(2, 2);
    CHECK(pretty(make_poly(f4.get(), 2, {{{1, 0}, 2}})) == "(0,1)*t0");
}

TEST_CASE("cache round trip is bit-identical") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "fqzeta_cache_test";
    fs::remove_all(dir);

    auto f3 = field_create(3, 1);
    BetaTuple betas = BetaTuple::of_u64({2, 1});
    SpecialPoly z = z_direct(betas, f3);

    CHECK_FALSE(cache_load(dir.string(), *f3, betas, "direct").has_value());
    cache_store(dir.string(), *f3, betas, "direct", z.poly);
    auto loaded = cache_load(dir.string(), *f3, betas, "direct");
    REQUIRE(loaded.has_value());
    CHECK(*loaded == z.poly);
    CHECK(poly_to_json(*loaded).dump() == poly_to_json(z.poly).dump());

    // different method key misses
    CHECK_FALSE(cache_load(dir.string(), *f3, betas, "via_ones").has_value());
    // key is stable
    CHECK(cache_key(*f3, betas, "direct") == cache_key(*f3, betas, "direct"));
    CHECK(cache_key(*f3, betas, "direct") != cache_key(*f3, betas, "via_ones"));
    fs::remove_all(dir);
}

TEST_CASE("zero report json") {
    auto f3 = field_create(3, 1);
    ZeroReport rep = trivial_zero_report(BetaTuple::of_u64({2}), f3);
    Json j = zero_report_to_json(rep, *f3);
    CHECK(j["q"] == 3);
    CHECK(j["phi"] == 1);
    CHECK(j["multiplicity_at_one"] == 1);
    CHECK(j["predicted_zero"] == true);
    CHECK(j["status"] == "ok");
    CHECK(j["betas"] == Json::array({"2"}));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fqzeta/kernel.hpp"
#include "fqzeta/special.hpp"

using namespace fqzeta;

namespace {

MultiPoly tensor_to_poly(const FieldCtx* f, const CoeffTensor& t, std::uint32_t d) {
    MultiPoly out(f, std::uint32_t(t.dims.size()) + 1);
    append_tensor_terms(out, t, d);
    out.normalize();
    return out;
}

MultiPoly shift_t0(const MultiPoly& ref, std::uint32_t d) {
    MultiPoly out(ref.field(), ref.num_vars());
    std::vector<Exp> key(ref.num_vars());
    for (std::size_t i = 0; i < ref.term_count(); ++i) {
        auto ex = ref.exp(i);
        key.assign(ex.begin(), ex.end());
        key[0] = d;
        out.push_term(key, ref.coeff(i));
    }
    out.normalize();
    return out;
}

} // namespace

TEST_CASE("power of a transported monic") {
    std::mt19937_64 rng(31);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
        auto f = field_create(p, e);
        for (int t = 0; t < 10; ++t) {
            std::uint32_t d = 1 + rng() % 3;
            std::vector<std::uint16_t> codes(d + 1);
            for (std::uint32_t i = 0; i < d; ++i) codes[i] = std::uint16_t(rng() % f->q);
            codes[d] = 1;
            MonicUPoly a{f.get(), codes};
            for (std::uint64_t beta : {0ull, 1ull, 2ull, 5ull, 12ull, 37ull}) {
                auto v = power_codes(*f, codes, beta);
                MultiPoly want = poly_pow(chi_eval(a, 1, 2), Nat(static_cast<unsigned long>(beta)));
                CHECK(v.size() == beta * d + 1);
                MultiPoly got(f.get(), 2);
                std::vector<Exp> key(2, 0);
                for (std::size_t j = 0; j < v.size(); ++j) {
                    if (!v[j]) continue;
                    key[1] = Exp(j);
                    got.push_term(key, v[j]);
                }
                got.normalize();
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("tensor kernel equals the reference coefficient by coefficient") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        auto f = field_create(p, e);
        KernelOpts opts;
        for (auto betas : std::vector<std::vector<std::uint64_t>>{
                 {}, {1}, {2}, {3}, {0}, {1, 1}, {2, 1}, {0, 2}, {1, 2, 1}}) {
            for (std::uint32_t d = 0; d <= 3; ++d) {
                CoeffTensor t = direct_coeff_tensor(*f, betas, d, opts);
                MultiPoly want = shift_t0(direct_coeff_reference(*f, betas, d), d);
                CHECK(tensor_to_poly(f.get(), t, d) == want);
            }
        }
    }
}

TEST_CASE("parallel and serial kernels are bit-identical") {
    auto f3 = field_create(3, 1);
    std::vector<std::uint64_t> betas{3, 2, 4};
    KernelOpts par, ser;
    ser.parallel = false;
    for (std::uint32_t d = 0; d <= 4; ++d) {
        CoeffTensor a = direct_coeff_tensor(*f3, betas, d, par);
        CoeffTensor b = direct_coeff_tensor(*f3, betas, d, ser);
        CHECK(a.cells == b.cells);
    }
    auto f4 = field_create(2, 2);
    std::vector<std::uint64_t> betas2{3, 3};
    for (std::uint32_t d = 0; d <= 5; ++d) {
        CoeffTensor a = direct_coeff_tensor(*f4, betas2, d, par);
        CoeffTensor b = direct_coeff_tensor(*f4, betas2, d, ser);
        CHECK(a.cells == b.cells);
    }
}

TEST_CASE("tensor budget refusal") {
    auto f2 = field_create(2, 1);
    KernelOpts opts;
    opts.tensor_budget = 100;
    CHECK_THROWS_AS(direct_coeff_tensor(*f2, std::vector<std::uint64_t>{50, 50}, 3, opts), BudgetError);
}

TEST_CASE("large single-exponent powers stay exact") {
    // the one-variable route of the witness equality: u^B for a few monics
    auto f2 = field_create(2, 1);
    std::vector<std::uint16_t> codes{1, 1, 0, 1}; // theta^3 + theta + 1
    auto v = power_codes(*f2, codes, 3510);
    CHECK(v.size() == 3 * 3510 + 1);
    // spot-check against the square-and-multiply route on a coarse stride
    MonicUPoly a{f2.get(), codes};
    MultiPoly want = poly_pow(chi_eval(a, 1, 2), Nat(3510));
    std::size_t nonzero = 0;
    for (auto c : v) nonzero += c != 0;
    CHECK(nonzero == want.term_count());
    for (std::size_t i = 0; i < want.term_count(); ++i) {
        auto ex = want.exp(i);
        CHECK(v[ex[1]] == want.coeff(i));
    }
}

#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "fqzeta/errors.hpp"

namespace fqzeta {

/// Arbitrary-precision non-negative integer. Exponents and digit images can
/// exceed 64 bits (e.g. p^i * beta under large digit permutations), so all
/// integer bookkeeping outside the inner kernels uses Nat.
using Nat = mpz_class;

inline Nat nat_pow(const Nat& base, unsigned long exp) {
    Nat r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

/// Checked narrowing for handing a Nat to a fixed-width kernel.
inline std::uint64_t to_u64(const Nat& n, const char* what) {
    if (n < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
        throw BudgetError(std::string(what) + " = " + n.get_str() +
                          " does not fit in 64 bits");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

inline std::vector<Nat> nats_from(const std::vector<std::uint64_t>& xs) {
    std::vector<Nat> out;
    out.reserve(xs.size());
    for (auto x : xs) out.emplace_back(static_cast<unsigned long>(x));
    return out;
}

} // namespace fqzeta

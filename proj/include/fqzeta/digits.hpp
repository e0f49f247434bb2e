#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fqzeta/nat.hpp"

namespace fqzeta {

/// Base-q expansion of a non-negative integer: digits low order first,
/// no trailing zero entry, empty for 0.
struct DigitExpansion {
    std::uint32_t base;
    std::vector<std::uint32_t> digits;

    Nat reconstruct() const;
};

DigitExpansion digits_base_q(const Nat& n, std::uint32_t q);

/// Sum of the base-q digits of n.
std::uint64_t length_l(const Nat& n, std::uint32_t q);

/// True iff no base-q digit position overflows in j + k. When true, the
/// length function is additive: l(j+k) = l(j) + l(k).
bool carry_free(const Nat& j, const Nat& k, std::uint32_t q);

/// A permutation of base-q digit positions moving only finitely many of
/// them. Acting on integers by sum beta_i q^i -> sum beta_i q^rho(i), these
/// maps restrict the digit-permutation group to images that stay integral.
class DigitPerm {
public:
    DigitPerm() = default;
    /// Pairs (position, image). The listed positions and the listed images
    /// must be the same set with no duplicates on either side.
    explicit DigitPerm(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

    std::uint32_t image(std::uint32_t pos) const;
    DigitPerm inverse() const;
    bool is_identity() const { return pairs_.empty(); }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs() const { return pairs_; }

    /// Parse the CLI syntax "0:2,2:0". An empty string is the identity.
    static DigitPerm parse(const std::string& text);
    std::string to_string() const;

private:
    // sorted by position; fixed points are not stored
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
};

/// sum beta_i q^rho(i) for n = sum beta_i q^i.
Nat perm_apply(const DigitPerm& perm, const Nat& n, std::uint32_t q);

} // namespace fqzeta

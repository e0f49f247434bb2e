#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fqzeta/field.hpp"
#include "fqzeta/nat.hpp"
#include "fqzeta/polyring.hpp"

namespace fqzeta {

/// z(1,...,1,t0) with s ones, in compressed symmetric form.
///
/// The polynomial is symmetric in t_1,...,t_s, so each t0^d coefficient is a
/// sum of monomial-orbit polynomials: for an exponent multiset E, the orbit
/// polynomial is the sum of all distinct monomials whose exponents are a
/// permutation of E. Orbits have disjoint supports, so this is an exact
/// sparse representation; a coefficient layer is zero iff its orbit map is
/// empty. At q = 2 and s = 12 the expanded polynomial has billions of terms
/// while the orbit form has a few thousand entries.
struct OnesSeries {
    const FieldCtx* f = nullptr;
    std::uint32_t s = 0;
    /// layers[d]: t0^d coefficient; key = ascending exponent multiset of
    /// length s, value = nonzero coefficient code shared by the whole orbit.
    std::vector<std::map<std::vector<Exp>, std::uint16_t>> layers;

    /// Exact degree in t0 (layers hold only nonzero orbits).
    std::int64_t degree() const;
    /// Number of terms a full expansion would have.
    Nat expanded_term_count() const;
};

struct OnesOpts {
    std::uint64_t orbit_budget = std::uint64_t(1) << 22;
};

/// Evaluate the recursion
///   Z_0 = 1,
///   Z_s = 1 - t0 * sum over index tuples (i_1..i_s) in {0,1}^s with
///         0 != sum i_j == 0 (mod q-1) of t1^(1-i_1)...ts^(1-i_s) *
///         Z(surviving variables),
/// entirely on orbits. Equal-size surviving subsets contribute renamings of
/// one polynomial, and in orbit form the whole subset sum collapses to a
/// single shift: dropping m variables lifts orbit E of Z_{s-m} to orbit
/// (E+1, 0^m) of Z_s with negated coefficient, with no collisions.
OnesSeries ones_series(const FieldCtx* f, std::uint32_t s, const OnesOpts& opts = {});

/// Expand to an ordinary polynomial in t_0, t_1,...,t_s (num_vars = s+1).
/// Refuses when the expansion exceeds term_budget.
MultiPoly ones_expand(const OnesSeries& series, std::uint64_t term_budget);

} // namespace fqzeta

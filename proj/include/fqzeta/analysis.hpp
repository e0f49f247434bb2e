#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fqzeta/digits.hpp"
#include "fqzeta/special.hpp"

namespace fqzeta {

/// Verdict on the trivial zero of z(betas, t0) at t0 = 1: the zero exists
/// iff sum(beta_i) is a positive multiple of q-1, and is then simple. Any
/// disagreement between the computed multiplicity and the prediction is an
/// implementation bug and throws TheoremViolation.
struct ZeroReport {
    BetaTuple betas;
    std::uint64_t phi = 0;
    std::int64_t degree = -1;
    MultiPoly value_at_one;
    std::uint32_t multiplicity = 0;
    bool predicted_zero = false;
};

ZeroReport trivial_zero_report(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts = {});

/// Degree invariance under coordinate-wise digit permutations. The phi
/// comparison is always made (it needs only digits); the polynomial degrees
/// are computed directly when both tuples fit the budget, and the report is
/// marked formula-level otherwise.
struct InvarianceReport {
    BetaTuple betas;
    BetaTuple images;
    std::uint64_t phi_before = 0, phi_after = 0;
    bool computed = false;
    std::int64_t degree_before = -1, degree_after = -1;

    bool phi_equal() const { return phi_before == phi_after; }
    bool ok() const { return phi_equal() && (!computed || degree_before == degree_after); }
};

InvarianceReport degree_invariance_check(const BetaTuple& betas, const std::vector<DigitPerm>& perms,
                                         const FieldPtr& f, const ComputeOpts& opts = {});

/// min over i >= 0 of floor(l(p^i beta)/(q-1)) via the i < e reduction;
/// the exact t0 degree of the one-variable special polynomial.
std::uint64_t sheats_degree(const Nat& beta, const FieldCtx& f);

struct SheatsReport {
    Nat beta;
    std::uint64_t formula = 0;
    std::optional<std::int64_t> computed; // within budget only
};

SheatsReport sheats_check(const Nat& beta, const FieldPtr& f, const ComputeOpts& opts = {});

/// An evaluation character a -> a(lambda_1)^(b_1)...a(lambda_s)^(b_s) with
/// values in an extension, together with the extra exponent on a itself.
struct DirichletSpec {
    FieldPtr ext;                        // extension of the base field
    std::vector<std::uint16_t> lambdas;  // element codes in ext
    BetaTuple exponents;                 // b_1..b_s
    Nat extra_beta = 0;                  // power of a kept as theta-polynomial
};

/// Special polynomial of the Dirichlet character: coefficients live in
/// ext[theta]; variables of the result are t0 (index 0) and theta (index 1).
/// Computed two ways: direct summation over A_+(d), and specialization of
/// the multivariate polynomial z(b_1,...,b_s,beta,t0); both must agree.
struct DirichletResult {
    MultiPoly poly;             // the direct route
    MultiPoly via_substitution; // the specialization route
    bool paths_agree = false;
    bool predicted_zero = false;
    bool vanishes_at_one = false;
    std::uint64_t phi_unspecialized = 0;
};

DirichletResult dirichlet_specialize(const DirichletSpec& spec, const FieldPtr& base,
                                     const ComputeOpts& opts = {});

/// chi(ab) = chi(a) chi(b) for the spec's character, given monic a and b.
bool character_is_multiplicative(const DirichletSpec& spec, const FieldPtr& base, const MonicUPoly& a,
                                 const MonicUPoly& b);

} // namespace fqzeta

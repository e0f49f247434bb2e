#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqzeta/digits.hpp"
#include "fqzeta/field.hpp"
#include "fqzeta/kernel.hpp"
#include "fqzeta/nat.hpp"
#include "fqzeta/ones_series.hpp"
#include "fqzeta/polyring.hpp"

namespace fqzeta {

/// Exponent tuple (beta_1,...,beta_s). Entries equal to zero mean the
/// corresponding variable is absent (chi^0 = 1).
struct BetaTuple {
    std::vector<Nat> betas;

    BetaTuple() = default;
    explicit BetaTuple(std::vector<Nat> b) : betas(std::move(b)) {}
    static BetaTuple of_u64(const std::vector<std::uint64_t>& xs) { return BetaTuple(nats_from(xs)); }
    static BetaTuple ones(std::uint32_t s) { return BetaTuple(std::vector<Nat>(s, Nat(1))); }

    std::uint32_t s() const { return std::uint32_t(betas.size()); }
    bool all_positive() const;
    Nat sum() const;
    /// Positions i (0-based) with beta_i > 0, in order.
    std::vector<std::uint32_t> support() const;
    /// The tuple with zero entries removed.
    BetaTuple survivors() const;
    BetaTuple scaled(const Nat& factor) const;
    std::string to_string() const;
};

struct ComputeOpts {
    std::uint64_t enumeration_budget = 10'000'000;
    std::uint64_t tensor_budget = std::uint64_t(1) << 27;
    /// Cap on materialized sparse terms (expansion of the ones series).
    std::uint64_t term_budget = std::uint64_t(1) << 24;
    /// Cap on compressed orbit count in the ones recursion.
    std::uint64_t orbit_budget = std::uint64_t(1) << 22;
    /// Cap on orbit-expansion work during substitution.
    std::uint64_t expansion_budget = std::uint64_t(1) << 28;
    std::optional<std::uint32_t> d_max;
    bool parallel = true;

    KernelOpts kernel() const {
        KernelOpts k;
        k.enumeration_budget = enumeration_budget;
        k.tensor_budget = tensor_budget;
        k.parallel = parallel;
        return k;
    }
};

enum class Provenance { Direct, Recursive, Specialized };

struct SpecialPoly {
    MultiPoly poly; // variables t_0,...,t_s
    Provenance provenance = Provenance::Direct;
    BetaTuple betas;

    const FieldCtx* field() const { return poly.field(); }
};

/// Exact t_0 degree: min over 0 <= i < e of
/// floor((l(p^i b_1) + ... + l(p^i b_s)) / (q-1)), zero entries dropped,
/// 0 for the empty tuple. Restricting to i < e is valid because
/// l(p^e b) = l(q b) = l(b) makes the minimand periodic in i.
std::uint64_t phi_degree(const BetaTuple& betas, const FieldCtx& f);

/// Brute-force series: sum over d of t0^d sum over A_+(d) of
/// prod chi_i(a)^(beta_i), summed to d_max = phi + 2 by default. Every
/// coefficient beyond phi must vanish (polynomiality tripwire; violations
/// throw TheoremViolation); the result is truncated to degree phi.
/// A caller-provided d_max below phi yields the partial series instead.
SpecialPoly z_direct(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts = {});

/// Same contract, computed with the generic sparse arithmetic, serially.
/// Reference implementation for tests and benchmarks.
SpecialPoly z_direct_reference(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts = {});

/// z(1,...,1,t0) through the recursion, expanded to an ordinary polynomial
/// (refused over the term budget; use ones_series for the compressed form).
SpecialPoly z_recursive_ones(std::uint32_t s, const FieldPtr& f, const ComputeOpts& opts = {});

enum class ZMethod { Direct, ViaOnes };

/// z(beta_1,...,beta_s,t0), either delegated to z_direct or assembled from
/// the ones series: z on l(beta_1)+...+l(beta_s) ones, specialized by
/// sending each block of digit slots of beta_i to t_i^(q^k).
SpecialPoly z_general(const BetaTuple& betas, const FieldPtr& f, ZMethod method,
                      const ComputeOpts& opts = {});

/// True when z_direct would fit the enumeration and tensor budgets.
bool direct_within_budget(const BetaTuple& betas, const FieldCtx& f, const ComputeOpts& opts);

/// Direct when affordable, otherwise via the ones series.
SpecialPoly z_auto(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts = {});

struct FrobeniusCheck {
    bool equal;
    MultiPoly lhs; // z(betas, t0)^(p^i)
    MultiPoly rhs; // z(p^i betas, t0^(p^i))
};

/// Verify z(b_1,...,b_s,t0)^(p^i) = z(p^i b_1,...,p^i b_s, t0^(p^i)) exactly.
FrobeniusCheck frobenius_twist_check(const BetaTuple& betas, std::uint32_t i, const FieldPtr& f,
                                     const ComputeOpts& opts = {});

/// One-variable specialization witness: minimal exponents 0 = m_0 < m_1 <
/// ... < m_{s-1} with q^(m_j) > q^(m_{j-1}) * p^(e-1) * beta_j, the combined
/// exponent B = sum beta_j q^(m_{j-1}), and the substitution t_j ->
/// t_1^(q^(m_{j-1})). The digit identity l(p^i B) = sum_j l(p^i beta_j),
/// i < e, is checked at construction.
struct WitnessSpec {
    std::vector<std::uint32_t> m; // m_1..m_{s-1}
    Nat B;
    std::vector<VarTarget> map;   // arity s+1, acts on z(betas)
};

WitnessSpec witness_specialization(const BetaTuple& betas, const FieldCtx& f);

} // namespace fqzeta

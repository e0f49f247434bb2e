#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fqzeta/field.hpp"
#include "fqzeta/nat.hpp"
#include "fqzeta/polyring.hpp"

namespace fqzeta {

struct KernelOpts {
    /// Maximum q^d enumerated per coefficient.
    std::uint64_t enumeration_budget = 10'000'000;
    /// Maximum dense cells per coefficient tensor.
    std::uint64_t tensor_budget = std::uint64_t(1) << 27;
    /// Use all OpenMP threads (subject to the accumulator memory cap).
    bool parallel = true;
    /// Per-thread accumulator memory cap, bytes.
    std::uint64_t thread_memory_budget = std::uint64_t(1) << 30;
};

/// Dense value of the t0^d coefficient of z(beta_1,...,beta_s,t0): the
/// field codes of sum over A_+(d) of prod chi_i(a)^{beta_i} on the exponent
/// box [0, d*beta_1] x ... x [0, d*beta_s]. The last axis is contiguous.
struct CoeffTensor {
    std::vector<std::uint64_t> dims;    // size s (empty for s = 0)
    std::vector<std::uint16_t> cells;   // product of dims (1 for s = 0)

    std::uint64_t cell_count() const { return cells.size(); }
};

/// Brute-force accumulation over all monic polynomials of degree d,
/// OpenMP-parallel over enumeration blocks. Exact field arithmetic makes the
/// result independent of the thread count, bit for bit.
CoeffTensor direct_coeff_tensor(const FieldCtx& f, std::span<const std::uint64_t> betas,
                                std::uint32_t d, const KernelOpts& opts);

/// Dirichlet-twisted variant over an extension: the 1-dimensional tensor of
/// sum over a in A_+(d) of prod_i a(lambda_i)^{lambda_exps[i]} * a^beta,
/// where a's coefficients are carried into the extension through emb and the
/// final factor keeps theta as an indeterminate. Length d*beta + 1.
CoeffTensor dirichlet_coeff_tensor(const FieldCtx& base, const Embedding& emb,
                                   std::span<const std::uint16_t> lambdas,
                                   std::span<const Nat> lambda_exps, const Nat& beta,
                                   std::uint32_t d, const KernelOpts& opts);

/// Straight-line serial implementation of the same coefficient using the
/// generic sparse polynomial arithmetic. Kept as the reference the kernels
/// are tested and benchmarked against.
MultiPoly direct_coeff_reference(const FieldCtx& f, std::span<const std::uint64_t> betas,
                                 std::uint32_t d);

/// Dense coefficient vector of (transport of a to one variable)^beta.
std::vector<std::uint16_t> power_codes(const FieldCtx& f, std::span<const std::uint16_t> monic,
                                       std::uint64_t beta);

/// Convert a coefficient tensor into the t0^d slice of an (s+1)-variable
/// sparse polynomial (variable 0 exponent = d), appending to out.
void append_tensor_terms(MultiPoly& out, const CoeffTensor& t, std::uint32_t d);

} // namespace fqzeta

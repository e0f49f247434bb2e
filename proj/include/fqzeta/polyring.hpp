#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqzeta/field.hpp"
#include "fqzeta/nat.hpp"

namespace fqzeta {

using Exp = std::uint32_t;

/// Sparse polynomial in t_0,...,t_{n-1} over a field context. Variable 0 is
/// the distinguished series variable t_0. Terms are kept normalized: no zero
/// coefficients, graded-lexicographic order (total degree ascending, ties by
/// the exponent vector compared entry by entry from t_0).
///
/// Storage is flat: term i occupies exps()[i*num_vars() .. (i+1)*num_vars()).
class MultiPoly {
public:
    MultiPoly() : f_(nullptr), nvars_(0) {}
    MultiPoly(const FieldCtx* f, std::uint32_t num_vars) : f_(f), nvars_(num_vars) {}

    static MultiPoly constant(const FieldCtx* f, std::uint32_t num_vars, std::uint16_t code);
    static MultiPoly monomial(const FieldCtx* f, std::vector<Exp> exp, std::uint16_t code);
    static MultiPoly variable(const FieldCtx* f, std::uint32_t num_vars, std::uint32_t var);

    const FieldCtx* field() const { return f_; }
    std::uint32_t num_vars() const { return nvars_; }
    std::size_t term_count() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;

    std::span<const Exp> exp(std::size_t i) const { return {exps_.data() + i * nvars_, nvars_}; }
    std::uint16_t coeff(std::size_t i) const { return coeffs_[i]; }

    /// Adds one term; used by builders. Call normalize() before reading.
    void push_term(std::span<const Exp> exp, std::uint16_t code);
    void normalize();

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Largest t_0 exponent, or -1 as the "minus infinity" marker for the
    /// zero polynomial.
    std::int64_t degree_in_t0() const { return degree_in_var(0); }
    std::int64_t degree_in_var(std::uint32_t var) const;

    /// Coefficient of t_0^d, as a polynomial in the same variable set
    /// (its t_0 exponents are all zero).
    MultiPoly coeff_of_t0(Exp d) const;

    std::uint16_t coeff_at(std::span<const Exp> exp) const;

private:
    const FieldCtx* f_;
    std::uint32_t nvars_;
    std::vector<Exp> exps_;
    std::vector<std::uint16_t> coeffs_;

    friend MultiPoly poly_add(const MultiPoly&, const MultiPoly&);
    friend MultiPoly poly_neg(const MultiPoly&);
    friend MultiPoly poly_mul(const MultiPoly&, const MultiPoly&);
};

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_sub(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_neg(const MultiPoly& a);
MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_pow(const MultiPoly& a, const Nat& n);

/// p^i-th power via coefficient-wise Frobenius: every coefficient is raised
/// to the p^i and every exponent is scaled by p^i. Agrees with poly_pow
/// (tested) and is linear-time.
MultiPoly frobenius_power(const MultiPoly& a, std::uint32_t i);

// -- substitution ------------------------------------------------------------

struct VarTarget {
    enum class Kind { Keep, VarPower, Const };
    Kind kind = Kind::Keep;
    std::uint32_t var = 0;     // VarPower: target variable index
    std::uint64_t power = 1;   // VarPower: exponent >= 1
    std::uint16_t value = 0;   // Const: element code (in the destination field)

    static VarTarget keep() { return {}; }
    static VarTarget var_power(std::uint32_t var, std::uint64_t power);
    static VarTarget constant(std::uint16_t code) {
        return {Kind::Const, 0, 1, code};
    }
};

/// Ring-homomorphic substitution: each variable maps to itself, to another
/// variable raised to a positive power, or to a constant. The result keeps
/// the same variable arity.
MultiPoly substitute(const MultiPoly& P, const std::vector<VarTarget>& map);

/// Substitution whose constants live in an extension; all coefficients are
/// transported through the embedding first.
MultiPoly substitute_embed(const MultiPoly& P, const std::vector<VarTarget>& map, const Embedding& emb);

/// Reinterpret P on a different variable list: new variable j corresponds to
/// old variable old_of_new[j]. Old variables not listed must have exponent 0
/// everywhere (checked).
MultiPoly reindex_vars(const MultiPoly& P, std::uint32_t new_nvars,
                       const std::vector<std::uint32_t>& old_of_new);

// -- t_0 root structure ------------------------------------------------------

/// Evaluation t_0 = c.
MultiPoly eval_t0(const MultiPoly& P, std::uint16_t code);

/// Exact division by (t_0 - c) if it divides P; nullopt otherwise.
std::optional<MultiPoly> div_t0_minus(const MultiPoly& P, std::uint16_t code);

/// Largest m with (t_0 - c)^m dividing P, by repeated exact division.
/// P must be nonzero.
std::uint32_t multiplicity_at_t0(const MultiPoly& P, std::uint16_t code);

// -- monic polynomials in theta ----------------------------------------------

/// A monic element of A_+(d): d+1 coefficient codes, low degree first,
/// leading coefficient 1.
struct MonicUPoly {
    const FieldCtx* f;
    std::vector<std::uint16_t> coeffs;

    std::uint32_t degree() const { return std::uint32_t(coeffs.size()) - 1; }
};

/// Deterministic enumeration of A_+(d): index k in [0, q^d) maps lower
/// coefficients fastest, each running through the canonical element order.
/// Supports disjoint block iteration for parallel reductions.
class MonicEnumerator {
public:
    MonicEnumerator(const FieldCtx* f, std::uint32_t d);

    std::uint64_t count() const { return count_; }
    MonicUPoly at(std::uint64_t k) const;
    /// Writes the coefficient codes of element k into out[0..d].
    void codes_at(std::uint64_t k, std::uint16_t* out) const;

private:
    const FieldCtx* f_;
    std::uint32_t d_;
    std::uint64_t count_;
};

/// q^d as a Nat (no overflow), for budget decisions.
Nat monic_count(const FieldCtx& f, std::uint32_t d);

/// Throws BudgetError naming d if q^d exceeds the enumeration budget.
void check_enumeration_budget(const FieldCtx& f, std::uint32_t d, std::uint64_t budget);

/// chi_i(a): the image of a under theta -> t_i, inside an num_vars-variable
/// polynomial ring. Requires 1 <= i < num_vars.
MultiPoly chi_eval(const MonicUPoly& a, std::uint32_t var_index, std::uint32_t num_vars);

} // namespace fqzeta

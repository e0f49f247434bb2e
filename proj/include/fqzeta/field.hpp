#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fqzeta/errors.hpp"
#include "fqzeta/nat.hpp"

namespace fqzeta {

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/// A finite field F_q, q = p^e, realized as F_p[x]/(f) for a deterministic
/// monic irreducible f: the lexicographically least one of degree e, where
/// coefficient vectors (a_0,...,a_{e-1}) are compared low-degree-first.
///
/// Elements are identified by integer codes in [0, q): the element with
/// F_p coordinates (c_0,...,c_{e-1}) has code sum c_i * p^i. Contexts are
/// immutable after construction and safe to share across threads.
class FieldCtx {
public:
    static constexpr std::uint32_t kDefaultMaxQ = 1u << 16;
    /// Fields up to this size precompute full add/mul tables.
    static constexpr std::uint32_t kTableLimit = 256;

    std::uint32_t p;
    std::uint32_t e;
    std::uint32_t q;
    /// Monic modulus, length e+1, low-degree-first, coefficients in [0,p).
    /// For e = 1 this is {p - a, 1} representing x - a with a = 0, i.e. {0, 1}.
    std::vector<std::uint32_t> modulus;

    FieldCtx(std::uint32_t p, std::uint32_t e, std::uint32_t max_q);

    // -- element arithmetic on codes ---------------------------------------

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const {
        return tables_ ? add_tab_[std::size_t(a) * q + b] : add_generic(a, b);
    }
    std::uint16_t sub(std::uint16_t a, std::uint16_t b) const { return add(a, neg(b)); }
    std::uint16_t neg(std::uint16_t a) const {
        return tables_ ? neg_tab_[a] : neg_generic(a);
    }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
        return tables_ ? mul_tab_[std::size_t(a) * q + b] : mul_generic(a, b);
    }
    std::uint16_t inv(std::uint16_t a) const;
    std::uint16_t pow(std::uint16_t a, const Nat& n) const;
    std::uint16_t pow_u64(std::uint16_t a, std::uint64_t n) const;

    // Reference implementations used regardless of table availability;
    // the table path must agree with these bit for bit (tested).
    std::uint16_t add_generic(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t neg_generic(std::uint16_t a) const;
    std::uint16_t mul_generic(std::uint16_t a, std::uint16_t b) const;

    // -- coordinates and canonical order ------------------------------------

    /// F_p coordinates of a code, low index first, length e.
    std::vector<std::uint32_t> coords(std::uint16_t a) const;
    std::uint16_t from_coords(const std::vector<std::uint32_t>& c) const;

    /// Rank of an element in the canonical order (coordinate vectors compared
    /// low-index-first). Ranks and codes coincide exactly when e = 1.
    std::uint16_t rank_of(std::uint16_t code) const { return rank_of_[code]; }
    std::uint16_t element_at_rank(std::uint16_t rank) const { return code_at_rank_[rank]; }

    /// Code of the residue class of x (the canonical generator). Equals p
    /// when e > 1; undefined for prime fields (throws).
    std::uint16_t generator() const;

    /// Multiplication by a fixed scalar c is F_p-linear on coordinates;
    /// this returns the e*e matrix M with (c*v)_k = sum_l M[k*e+l] * v_l.
    /// Rows are precomputed for q <= kTableLimit.
    const std::uint8_t* scalar_matrix(std::uint16_t c) const;
    void scalar_matrix_into(std::uint16_t c, std::uint8_t* out) const;

    bool structurally_equal(const FieldCtx& other) const {
        return p == other.p && e == other.e && modulus == other.modulus;
    }

private:
    bool tables_ = false;
    std::vector<std::uint16_t> add_tab_;
    std::vector<std::uint16_t> mul_tab_;
    std::vector<std::uint16_t> neg_tab_;
    std::vector<std::uint16_t> inv_tab_;
    std::vector<std::uint16_t> rank_of_;
    std::vector<std::uint16_t> code_at_rank_;
    std::vector<std::uint8_t> scalar_mats_;

    void build_tables();
};

/// Construct (or fetch from the process-wide registry) the field with p^e
/// elements. Deterministic: equal (p, e) always yields the same modulus.
FieldPtr field_create(std::uint32_t p, std::uint32_t e,
                      std::uint32_t max_q = FieldCtx::kDefaultMaxQ);

/// A field element: a length-e coordinate vector over F_p, stored as its
/// integer code together with the owning context.
class FqElem {
public:
    FqElem() : ctx_(nullptr), code_(0) {}
    FqElem(const FieldCtx* ctx, std::uint16_t code) : ctx_(ctx), code_(code) {}

    std::uint16_t code() const { return code_; }
    const FieldCtx* ctx() const { return ctx_; }
    std::vector<std::uint32_t> coords() const { return ctx_->coords(code_); }
    bool is_zero() const { return code_ == 0; }

    friend FqElem operator+(const FqElem& a, const FqElem& b) {
        return FqElem(same_ctx(a, b), a.ctx_->add(a.code_, b.code_));
    }
    friend FqElem operator-(const FqElem& a, const FqElem& b) {
        return FqElem(same_ctx(a, b), a.ctx_->sub(a.code_, b.code_));
    }
    friend FqElem operator*(const FqElem& a, const FqElem& b) {
        return FqElem(same_ctx(a, b), a.ctx_->mul(a.code_, b.code_));
    }
    FqElem operator-() const { return FqElem(ctx_, ctx_->neg(code_)); }
    FqElem inv() const { return FqElem(ctx_, ctx_->inv(code_)); }
    FqElem pow(const Nat& n) const { return FqElem(ctx_, ctx_->pow(code_, n)); }

    bool operator==(const FqElem& o) const {
        return code_ == o.code_ && (ctx_ == o.ctx_ || (ctx_ && o.ctx_ && ctx_->structurally_equal(*o.ctx_)));
    }
    bool operator!=(const FqElem& o) const { return !(*this == o); }

private:
    static const FieldCtx* same_ctx(const FqElem& a, const FqElem& b);

    const FieldCtx* ctx_;
    std::uint16_t code_;
};

/// A field homomorphism F_q -> F_{q^m} determined by sending the canonical
/// generator of the source to the canonically least root of the source
/// modulus inside the destination.
class Embedding {
public:
    Embedding() = default;
    Embedding(FieldPtr src, FieldPtr dst);

    std::uint16_t map(std::uint16_t src_code) const { return table_[src_code]; }
    FqElem operator()(const FqElem& a) const;
    const FieldCtx* src() const { return src_.get(); }
    const FieldCtx* dst() const { return dst_.get(); }

private:
    FieldPtr src_;
    FieldPtr dst_;
    std::vector<std::uint16_t> table_;
};

Embedding field_embed(const FieldPtr& src, const FieldPtr& dst);

} // namespace fqzeta

#include "fqzeta/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "fqzeta/errors.hpp"

namespace fqzeta {
namespace {

constexpr Exp kExpCap = 1u << 30;

struct ExpVecHash {
    std::size_t operator()(const std::vector<Exp>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (Exp x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return std::size_t(h);
    }
};

using AccMap = std::unordered_map<std::vector<Exp>, std::uint16_t, ExpVecHash>;

void acc_add(AccMap& acc, const FieldCtx* f, std::vector<Exp>&& key, std::uint16_t c) {
    if (!c) return;
    auto [it, fresh] = acc.emplace(std::move(key), c);
    if (!fresh) {
        it->second = f->add(it->second, c);
        if (!it->second) acc.erase(it);
    }
}

MultiPoly from_acc(const FieldCtx* f, std::uint32_t nvars, const AccMap& acc) {
    MultiPoly out(f, nvars);
    for (auto& [exp, c] : acc) out.push_term(exp, c);
    out.normalize();
    return out;
}

// graded-lex on flat exponent storage
bool term_less(const Exp* a, const Exp* b, std::uint32_t n) {
    std::uint64_t da = 0, db = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db;
    return std::lexicographical_compare(a, a + n, b, b + n);
}

void require_same_ring(const MultiPoly& a, const MultiPoly& b) {
    if (!a.field() || !b.field()) throw ContextMismatch("polynomial has no field context");
    if (a.field() != b.field() && !a.field()->structurally_equal(*b.field()))
        throw ContextMismatch("polynomials belong to different fields");
    if (a.num_vars() != b.num_vars())
        throw ContextMismatch("polynomials have different variable arity");
}

} // namespace

MultiPoly MultiPoly::constant(const FieldCtx* f, std::uint32_t num_vars, std::uint16_t code) {
    MultiPoly out(f, num_vars);
    if (code) {
        std::vector<Exp> z(num_vars, 0);
        out.push_term(z, code);
    }
    return out;
}

MultiPoly MultiPoly::monomial(const FieldCtx* f, std::vector<Exp> exp, std::uint16_t code) {
    MultiPoly out(f, std::uint32_t(exp.size()));
    if (code) out.push_term(exp, code);
    return out;
}

MultiPoly MultiPoly::variable(const FieldCtx* f, std::uint32_t num_vars, std::uint32_t var) {
    std::vector<Exp> e(num_vars, 0);
    e.at(var) = 1;
    return monomial(f, std::move(e), 1);
}

bool MultiPoly::is_one() const {
    if (coeffs_.size() != 1 || coeffs_[0] != 1) return false;
    for (Exp x : exps_) if (x) return false;
    return true;
}

void MultiPoly::push_term(std::span<const Exp> exp, std::uint16_t code) {
    if (exp.size() != nvars_) throw InvalidArgument("term exponent vector has wrong arity");
    exps_.insert(exps_.end(), exp.begin(), exp.end());
    coeffs_.push_back(code);
}

void MultiPoly::normalize() {
    std::size_t n = coeffs_.size();
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const Exp* E = exps_.data();
    std::uint32_t nv = nvars_;
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t i, std::uint32_t j) {
        return term_less(E + std::size_t(i) * nv, E + std::size_t(j) * nv, nv);
    });
    std::vector<Exp> ne;
    std::vector<std::uint16_t> nc;
    ne.reserve(exps_.size());
    nc.reserve(n);
    for (std::size_t k = 0; k < n;) {
        const Exp* cur = E + std::size_t(idx[k]) * nv;
        std::uint16_t c = coeffs_[idx[k]];
        std::size_t j = k + 1;
        while (j < n && std::equal(cur, cur + nv, E + std::size_t(idx[j]) * nv)) {
            c = f_->add(c, coeffs_[idx[j]]);
            ++j;
        }
        if (c) {
            ne.insert(ne.end(), cur, cur + nv);
            nc.push_back(c);
        }
        k = j;
    }
    exps_ = std::move(ne);
    coeffs_ = std::move(nc);
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) return false;
    if (f_ != o.f_ && !(f_ && o.f_ && f_->structurally_equal(*o.f_))) return false;
    return coeffs_ == o.coeffs_ && exps_ == o.exps_;
}

std::int64_t MultiPoly::degree_in_var(std::uint32_t var) const {
    if (coeffs_.empty()) return -1;
    Exp best = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) best = std::max(best, exps_[i * nvars_ + var]);
    return std::int64_t(best);
}

MultiPoly MultiPoly::coeff_of_t0(Exp d) const {
    MultiPoly out(f_, nvars_);
    std::vector<Exp> key(nvars_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        auto ex = exp(i);
        if (ex[0] != d) continue;
        key.assign(ex.begin(), ex.end());
        key[0] = 0;
        out.push_term(key, coeffs_[i]);
    }
    out.normalize();
    return out;
}

std::uint16_t MultiPoly::coeff_at(std::span<const Exp> target) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        auto ex = exp(i);
        if (std::equal(ex.begin(), ex.end(), target.begin(), target.end())) return coeffs_[i];
    }
    return 0;
}

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b) {
    require_same_ring(a, b);
    MultiPoly out(a.field(), a.num_vars());
    for (std::size_t i = 0; i < a.term_count(); ++i) out.push_term(a.exp(i), a.coeff(i));
    for (std::size_t i = 0; i < b.term_count(); ++i) out.push_term(b.exp(i), b.coeff(i));
    out.normalize();
    return out;
}

MultiPoly poly_neg(const MultiPoly& a) {
    MultiPoly out = a;
    for (auto& c : out.coeffs_) c = a.field()->neg(c);
    return out;
}

MultiPoly poly_sub(const MultiPoly& a, const MultiPoly& b) { return poly_add(a, poly_neg(b)); }

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) {
    require_same_ring(a, b);
    const FieldCtx* f = a.field();
    AccMap acc;
    std::vector<Exp> key(a.num_vars());
    for (std::size_t i = 0; i < a.term_count(); ++i) {
        auto ea = a.exp(i);
        for (std::size_t j = 0; j < b.term_count(); ++j) {
            auto eb = b.exp(j);
            for (std::size_t v = 0; v < key.size(); ++v) {
                std::uint64_t s = std::uint64_t(ea[v]) + eb[v];
                if (s > kExpCap) throw BudgetError("product exponent exceeds the supported range");
                key[v] = Exp(s);
            }
            acc_add(acc, f, std::vector<Exp>(key), f->mul(a.coeff(i), b.coeff(j)));
        }
    }
    return from_acc(f, a.num_vars(), acc);
}

MultiPoly poly_pow(const MultiPoly& a, const Nat& n) {
    if (n < 0) throw InvalidArgument("negative polynomial power");
    MultiPoly r = MultiPoly::constant(a.field(), a.num_vars(), 1);
    if (n == 0) return r;
    MultiPoly b = a;
    Nat m = n;
    while (m != 0) {
        if (mpz_odd_p(m.get_mpz_t())) r = poly_mul(r, b);
        m >>= 1;
        if (m != 0) b = poly_mul(b, b);
    }
    return r;
}

MultiPoly frobenius_power(const MultiPoly& a, std::uint32_t i) {
    const FieldCtx* f = a.field();
    Nat pi = nat_pow(Nat(f->p), i);
    std::uint64_t scale = to_u64(pi, "p^i exponent scale");
    MultiPoly out(f, a.num_vars());
    std::vector<Exp> key(a.num_vars());
    for (std::size_t t = 0; t < a.term_count(); ++t) {
        auto ex = a.exp(t);
        for (std::size_t v = 0; v < key.size(); ++v) {
            std::uint64_t s = std::uint64_t(ex[v]) * scale;
            if (s > kExpCap) throw BudgetError("Frobenius power exponent exceeds the supported range");
            key[v] = Exp(s);
        }
        out.push_term(key, f->pow(a.coeff(t), pi));
    }
    out.normalize();
    return out;
}

VarTarget VarTarget::var_power(std::uint32_t var, std::uint64_t power) {
    if (power < 1) throw InvalidArgument("substitution power must be positive");
    VarTarget t;
    t.kind = Kind::VarPower;
    t.var = var;
    t.power = power;
    return t;
}

namespace {

MultiPoly substitute_impl(const MultiPoly& P, const std::vector<VarTarget>& map,
                          const FieldCtx* dst, const Embedding* emb) {
    if (map.size() != P.num_vars()) throw InvalidArgument("substitution map has wrong arity");
    for (auto& t : map)
        if (t.kind == VarTarget::Kind::VarPower && t.var >= P.num_vars())
            throw InvalidArgument("substitution target variable out of range");
    AccMap acc;
    for (std::size_t i = 0; i < P.term_count(); ++i) {
        auto ex = P.exp(i);
        std::uint16_t c = P.coeff(i);
        if (emb) c = emb->map(c);
        std::vector<Exp> key(P.num_vars(), 0);
        for (std::size_t v = 0; v < map.size(); ++v) {
            if (!ex[v]) continue;
            switch (map[v].kind) {
                case VarTarget::Kind::Keep:
                    key[v] += ex[v];
                    break;
                case VarTarget::Kind::VarPower: {
                    std::uint64_t s = std::uint64_t(key[map[v].var]) + std::uint64_t(ex[v]) * map[v].power;
                    if (s > kExpCap) throw BudgetError("substitution exponent exceeds the supported range");
                    key[map[v].var] = Exp(s);
                    break;
                }
                case VarTarget::Kind::Const:
                    c = dst->mul(c, dst->pow(map[v].value, Nat(ex[v])));
                    break;
            }
            if (!c) break;
        }
        acc_add(acc, dst, std::move(key), c);
    }
    return from_acc(dst, P.num_vars(), acc);
}

} // namespace

MultiPoly substitute(const MultiPoly& P, const std::vector<VarTarget>& map) {
    return substitute_impl(P, map, P.field(), nullptr);
}

MultiPoly substitute_embed(const MultiPoly& P, const std::vector<VarTarget>& map, const Embedding& emb) {
    if (emb.src() != P.field() && !emb.src()->structurally_equal(*P.field()))
        throw ContextMismatch("embedding source does not match the polynomial field");
    return substitute_impl(P, map, emb.dst(), &emb);
}

MultiPoly reindex_vars(const MultiPoly& P, std::uint32_t new_nvars,
                       const std::vector<std::uint32_t>& old_of_new) {
    if (old_of_new.size() != new_nvars) throw InvalidArgument("variable reindex map has wrong arity");
    std::vector<std::int64_t> new_of_old(P.num_vars(), -1);
    for (std::uint32_t j = 0; j < new_nvars; ++j) {
        if (old_of_new[j] >= P.num_vars()) throw InvalidArgument("variable reindex source out of range");
        new_of_old[old_of_new[j]] = j;
    }
    MultiPoly out(P.field(), new_nvars);
    std::vector<Exp> key(new_nvars);
    for (std::size_t i = 0; i < P.term_count(); ++i) {
        auto ex = P.exp(i);
        std::fill(key.begin(), key.end(), 0);
        for (std::uint32_t v = 0; v < P.num_vars(); ++v) {
            if (!ex[v]) continue;
            if (new_of_old[v] < 0)
                throw InvalidArgument("variable reindex drops a variable that occurs in the polynomial");
            key[std::size_t(new_of_old[v])] = ex[v];
        }
        out.push_term(key, P.coeff(i));
    }
    out.normalize();
    return out;
}

MultiPoly eval_t0(const MultiPoly& P, std::uint16_t code) {
    std::vector<VarTarget> map(P.num_vars());
    map[0] = VarTarget::constant(code);
    return substitute(P, map);
}

std::optional<MultiPoly> div_t0_minus(const MultiPoly& P, std::uint16_t code) {
    // Synthetic division in t_0 over the coefficient ring F_q[t_1,...]:
    // P = sum_d t_0^d C_d; Q_{D-1} = C_D, Q_{d-1} = C_d + c Q_d; remainder
    // R = C_0 + c Q_0. Exact iff R = 0.
    const FieldCtx* f = P.field();
    std::int64_t D = P.degree_in_t0();
    if (D < 0) return MultiPoly(f, P.num_vars()); // 0 / anything = 0
    std::vector<MultiPoly> C(std::size_t(D) + 1);
    for (std::int64_t d = 0; d <= D; ++d) C[std::size_t(d)] = P.coeff_of_t0(Exp(d));
    std::vector<MultiPoly> Q;
    Q.resize(std::size_t(D));
    MultiPoly carry = C[std::size_t(D)];
    for (std::int64_t d = D - 1; d >= 0; --d) {
        Q[std::size_t(d)] = carry; // Q_d
        // next carry: C_d + c * Q_d
        MultiPoly scaled = carry;
        if (code != 1) {
            MultiPoly cc = MultiPoly::constant(f, P.num_vars(), code);
            scaled = poly_mul(carry, cc);
        }
        carry = poly_add(C[std::size_t(d)], scaled);
    }
    if (!carry.is_zero()) return std::nullopt;
    MultiPoly out(f, P.num_vars());
    std::vector<Exp> key(P.num_vars());
    for (std::size_t d = 0; d < Q.size(); ++d) {
        for (std::size_t i = 0; i < Q[d].term_count(); ++i) {
            auto ex = Q[d].exp(i);
            key.assign(ex.begin(), ex.end());
            key[0] = Exp(d);
            out.push_term(key, Q[d].coeff(i));
        }
    }
    out.normalize();
    return out;
}

std::uint32_t multiplicity_at_t0(const MultiPoly& P, std::uint16_t code) {
    if (P.is_zero()) throw InvalidArgument("multiplicity of the zero polynomial");
    std::uint32_t m = 0;
    MultiPoly cur = P;
    while (true) {
        auto next = div_t0_minus(cur, code);
        if (!next) return m;
        ++m;
        cur = std::move(*next);
        if (cur.is_zero()) throw Error("internal error: exact division produced zero from nonzero input");
    }
}

MonicEnumerator::MonicEnumerator(const FieldCtx* f, std::uint32_t d) : f_(f), d_(d) {
    Nat n = monic_count(*f, d);
    count_ = to_u64(n, "A_+(d) size q^d");
}

void MonicEnumerator::codes_at(std::uint64_t k, std::uint16_t* out) const {
    std::uint64_t v = k;
    for (std::uint32_t i = 0; i < d_; ++i) {
        out[i] = f_->element_at_rank(std::uint16_t(v % f_->q));
        v /= f_->q;
    }
    out[d_] = 1;
}

MonicUPoly MonicEnumerator::at(std::uint64_t k) const {
    MonicUPoly a{f_, std::vector<std::uint16_t>(d_ + 1)};
    codes_at(k, a.coeffs.data());
    return a;
}

Nat monic_count(const FieldCtx& f, std::uint32_t d) { return nat_pow(Nat(f.q), d); }

void check_enumeration_budget(const FieldCtx& f, std::uint32_t d, std::uint64_t budget) {
    if (monic_count(f, d) > Nat(budget))
        throw BudgetError("enumeration of A_+(d) at d = " + std::to_string(d) + " needs q^d = " +
                              monic_count(f, d).get_str() + " elements, over the budget of " +
                              std::to_string(budget) + " (raise --budget to proceed)",
                          d);
}

MultiPoly chi_eval(const MonicUPoly& a, std::uint32_t var_index, std::uint32_t num_vars) {
    if (var_index < 1 || var_index >= num_vars)
        throw InvalidArgument("chi variable index out of range");
    MultiPoly out(a.f, num_vars);
    std::vector<Exp> key(num_vars, 0);
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
        if (!a.coeffs[j]) continue;
        key[var_index] = Exp(j);
        out.push_term(key, a.coeffs[j]);
    }
    out.normalize();
    return out;
}

} // namespace fqzeta

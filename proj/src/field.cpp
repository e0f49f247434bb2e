#include "fqzeta/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace fqzeta {
namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// -- small F_p[x] arithmetic used only during construction ------------------
// Polynomials are coefficient vectors, low degree first, no trailing zeros.
using PPoly = std::vector<std::uint32_t>;

void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t p_inv_mod(std::uint32_t a, std::uint32_t p) {
    // Fermat; p is prime and a != 0.
    std::uint64_t r = 1, b = a % p, n = p - 2;
    while (n) {
        if (n & 1) r = r * b % p;
        b = b * b % p;
        n >>= 1;
    }
    return std::uint32_t(r);
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    // reduce by monic f of degree m
    std::size_t m = f.size() - 1;
    for (std::size_t i = acc.size(); i-- > m;) {
        std::uint64_t c = acc[i] % p;
        if (!c) continue;
        for (std::size_t j = 0; j < m; ++j)
            acc[i - m + j] = (acc[i - m + j] + c * (p - f[j])) % p;
        acc[i] = 0;
    }
    PPoly out(m, 0);
    for (std::size_t i = 0; i < m && i < acc.size(); ++i) out[i] = std::uint32_t(acc[i] % p);
    ptrim(out);
    return out;
}

PPoly ppowmod_xq(const PPoly& base, std::uint64_t n, const PPoly& f, std::uint32_t p) {
    PPoly r = {1};
    PPoly b = base;
    while (n) {
        if (n & 1) r = pmulmod(r, b, f, p);
        b = pmulmod(b, b, f, p);
        n >>= 1;
    }
    return r;
}

// x^(p^k) mod f, by k successive p-th powers. Callers guarantee deg f >= 2.
PPoly frob_iter(std::uint32_t k, const PPoly& f, std::uint32_t p) {
    PPoly g = {0, 1};
    for (std::uint32_t i = 0; i < k; ++i) g = ppowmod_xq(g, p, f, p);
    return g;
}

PPoly pgcd(PPoly a, PPoly b, std::uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b
        std::uint32_t lead_inv = p_inv_mod(b.back(), p);
        while (a.size() >= b.size()) {
            std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
            if (c) {
                std::size_t off = a.size() - b.size();
                for (std::size_t j = 0; j < b.size(); ++j)
                    a[off + j] = std::uint32_t((a[off + j] + c * (p - b[j])) % p);
            }
            a.pop_back();
            ptrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const PPoly& f, std::uint32_t p) {
    // Rabin: f (monic, degree e) is irreducible over F_p iff
    //   x^(p^e) == x (mod f), and
    //   gcd(x^(p^(e/r)) - x, f) == 1 for every prime r | e.
    std::uint32_t e = std::uint32_t(f.size()) - 1;
    if (e == 1) return true;
    PPoly x = {0, 1};
    PPoly xe = frob_iter(e, f, p);
    if (xe != x) return false;
    std::uint32_t rem = e;
    for (std::uint32_t r = 2; r <= rem; ++r) {
        if (rem % r) continue;
        while (rem % r == 0) rem /= r;
        PPoly g = frob_iter(e / r, f, p);
        // g - x
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        ptrim(g);
        PPoly d = pgcd(g, f, p);
        if (d.size() != 1) return false;
    }
    return true;
}

} // namespace

FieldCtx::FieldCtx(std::uint32_t p_, std::uint32_t e_, std::uint32_t max_q) {
    if (e_ < 1) throw InvalidArgument("field extension degree must be >= 1");
    if (!is_prime_u32(p_)) throw InvalidArgument("field characteristic " + std::to_string(p_) + " is not prime");
    Nat qn = nat_pow(Nat(p_), e_);
    if (qn > Nat(max_q))
        throw InvalidArgument("field size p^e = " + qn.get_str() + " exceeds the bound " + std::to_string(max_q));
    p = p_;
    e = e_;
    q = std::uint32_t(qn.get_ui());

    if (e == 1) {
        modulus = {0, 1}; // x
    } else {
        // Least monic irreducible of degree e: scan non-leading coefficient
        // vectors (a_0,...,a_{e-1}) in lexicographic order, a_0 most
        // significant.
        bool found = false;
        std::vector<std::uint32_t> a(e, 0);
        while (!found) {
            PPoly f(a.begin(), a.end());
            f.push_back(1);
            if (is_irreducible(f, p)) {
                modulus.assign(f.begin(), f.end());
                found = true;
                break;
            }
            // next vector in lex order: increment from the low-significance
            // end, which is index e-1.
            std::size_t i = e;
            while (i-- > 0) {
                if (++a[i] < p) break;
                a[i] = 0;
                if (i == 0) throw Error("no irreducible polynomial found (impossible)");
            }
        }
    }

    rank_of_.resize(q);
    code_at_rank_.resize(q);
    std::vector<std::uint32_t> ppow(e);
    ppow[e - 1] = 1;
    for (std::uint32_t i = e - 1; i-- > 0;) ppow[i] = ppow[i + 1] * p;
    for (std::uint32_t c = 0; c < q; ++c) {
        std::uint32_t rank = 0, v = c;
        // rank = coordinates read low index first as the most significant
        // base-p digit.
        for (std::uint32_t i = 0; i < e; ++i) {
            rank += (v % p) * ppow[i];
            v /= p;
        }
        rank_of_[c] = std::uint16_t(rank);
        code_at_rank_[rank] = std::uint16_t(c);
    }

    if (q <= kTableLimit) build_tables();
}

std::uint16_t FieldCtx::add_generic(std::uint16_t a, std::uint16_t b) const {
    std::uint32_t out = 0, mul = 1, x = a, y = b;
    for (std::uint32_t i = 0; i < e; ++i) {
        out += ((x + y) % p) * mul;
        x /= p;
        y /= p;
        mul *= p;
    }
    return std::uint16_t(out);
}

std::uint16_t FieldCtx::neg_generic(std::uint16_t a) const {
    std::uint32_t out = 0, mul = 1, x = a;
    for (std::uint32_t i = 0; i < e; ++i) {
        out += ((p - x % p) % p) * mul;
        x /= p;
        mul *= p;
    }
    return std::uint16_t(out);
}

std::uint16_t FieldCtx::mul_generic(std::uint16_t a, std::uint16_t b) const {
    if (e == 1) return std::uint16_t(std::uint64_t(a) * b % p);
    std::uint32_t ac[17], bc[17];
    std::uint64_t acc[33] = {0};
    std::uint32_t x = a, y = b;
    for (std::uint32_t i = 0; i < e; ++i) {
        ac[i] = x % p;
        bc[i] = y % p;
        x /= p;
        y /= p;
    }
    for (std::uint32_t i = 0; i < e; ++i)
        if (ac[i])
            for (std::uint32_t j = 0; j < e; ++j) acc[i + j] += std::uint64_t(ac[i]) * bc[j];
    for (std::uint32_t i = 2 * e - 2 + 1; i-- > e;) {
        std::uint64_t c = acc[i] % p;
        acc[i] = 0;
        if (!c) continue;
        for (std::uint32_t j = 0; j < e; ++j) acc[i - e + j] += c * (p - modulus[j]);
    }
    std::uint32_t out = 0, mul = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        out += std::uint32_t(acc[i] % p) * mul;
        mul *= p;
    }
    return std::uint16_t(out);
}

std::uint16_t FieldCtx::inv(std::uint16_t a) const {
    if (a == 0) throw InvalidArgument("inversion of zero");
    if (tables_) return inv_tab_[a];
    return pow_u64(a, q - 2);
}

std::uint16_t FieldCtx::pow_u64(std::uint16_t a, std::uint64_t n) const {
    std::uint16_t r = 1, b = a;
    while (n) {
        if (n & 1) r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

std::uint16_t FieldCtx::pow(std::uint16_t a, const Nat& n) const {
    if (n < 0) throw InvalidArgument("negative exponent");
    if (a == 0) return n == 0 ? 1 : 0;
    Nat r = n % Nat(q - 1);
    return pow_u64(a, r.get_ui());
}

std::vector<std::uint32_t> FieldCtx::coords(std::uint16_t a) const {
    std::vector<std::uint32_t> c(e);
    std::uint32_t x = a;
    for (std::uint32_t i = 0; i < e; ++i) {
        c[i] = x % p;
        x /= p;
    }
    return c;
}

std::uint16_t FieldCtx::from_coords(const std::vector<std::uint32_t>& c) const {
    if (c.size() != e) throw InvalidArgument("coordinate vector has wrong length");
    std::uint32_t out = 0, mul = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (c[i] >= p) throw InvalidArgument("coordinate out of range [0, p)");
        out += c[i] * mul;
        mul *= p;
    }
    return std::uint16_t(out);
}

std::uint16_t FieldCtx::generator() const {
    if (e == 1) throw InvalidArgument("prime field has no extension generator");
    return std::uint16_t(p);
}

void FieldCtx::scalar_matrix_into(std::uint16_t c, std::uint8_t* out) const {
    // column l: coordinates of c * x^l
    std::uint32_t basis = 1;
    for (std::uint32_t l = 0; l < e; ++l) {
        std::uint16_t img = mul(c, std::uint16_t(basis));
        std::uint32_t v = img;
        for (std::uint32_t k = 0; k < e; ++k) {
            out[k * e + l] = std::uint8_t(v % p);
            v /= p;
        }
        basis *= p;
    }
}

const std::uint8_t* FieldCtx::scalar_matrix(std::uint16_t c) const {
    if (scalar_mats_.empty()) return nullptr;
    return &scalar_mats_[std::size_t(c) * e * e];
}

void FieldCtx::build_tables() {
    add_tab_.resize(std::size_t(q) * q);
    mul_tab_.resize(std::size_t(q) * q);
    neg_tab_.resize(q);
    inv_tab_.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
        neg_tab_[a] = neg_generic(std::uint16_t(a));
        for (std::uint32_t b = 0; b < q; ++b) {
            add_tab_[std::size_t(a) * q + b] = add_generic(std::uint16_t(a), std::uint16_t(b));
            mul_tab_[std::size_t(a) * q + b] = mul_generic(std::uint16_t(a), std::uint16_t(b));
        }
    }
    tables_ = true; // pow/inv below may now use mul()
    for (std::uint32_t a = 1; a < q; ++a) inv_tab_[a] = pow_u64(std::uint16_t(a), q - 2);
    inv_tab_[0] = 0;
    scalar_mats_.resize(std::size_t(q) * e * e);
    for (std::uint32_t c = 0; c < q; ++c) scalar_matrix_into(std::uint16_t(c), &scalar_mats_[std::size_t(c) * e * e]);
}

const FieldCtx* FqElem::same_ctx(const FqElem& a, const FqElem& b) {
    if (!a.ctx_ || !b.ctx_) throw ContextMismatch("element has no field context");
    if (a.ctx_ != b.ctx_ && !a.ctx_->structurally_equal(*b.ctx_))
        throw ContextMismatch("elements belong to different fields");
    return a.ctx_;
}

FieldPtr field_create(std::uint32_t p, std::uint32_t e, std::uint32_t max_q) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = registry.find(key);
    if (it != registry.end()) {
        // The registry only caches fields built within the default bound, so
        // a cached entry always satisfies any caller bound >= its size.
        if (it->second->q <= max_q) return it->second;
        throw InvalidArgument("field size p^e exceeds the bound " + std::to_string(max_q));
    }
    auto ctx = std::make_shared<const FieldCtx>(p, e, max_q);
    registry[key] = ctx;
    return ctx;
}

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p != dst_->p)
        throw InvalidArgument("embedding requires equal characteristic");
    if (dst_->e % src_->e != 0)
        throw InvalidArgument("embedding requires the target degree to be a multiple of the source degree");
    // Least root of the source modulus in the destination, canonical order.
    std::uint16_t root = 0;
    bool found = false;
    for (std::uint32_t r = 0; r < dst_->q && !found; ++r) {
        std::uint16_t cand = dst_->element_at_rank(std::uint16_t(r));
        // Horner over dst; modulus coefficients are prime-subfield codes.
        std::uint16_t acc = 0;
        for (std::size_t i = src_->modulus.size(); i-- > 0;) {
            acc = dst_->mul(acc, cand);
            acc = dst_->add(acc, std::uint16_t(src_->modulus[i] % dst_->p));
        }
        if (acc == 0) {
            root = cand;
            found = true;
        }
    }
    if (!found) throw Error("internal error: no root of the source modulus in the destination field");
    table_.resize(src_->q);
    for (std::uint32_t a = 0; a < src_->q; ++a) {
        std::uint16_t img = 0, rp = 1;
        std::uint32_t v = a;
        for (std::uint32_t i = 0; i < src_->e; ++i) {
            std::uint16_t ci = std::uint16_t(v % src_->p);
            img = dst_->add(img, dst_->mul(ci, rp));
            rp = dst_->mul(rp, root);
            v /= src_->p;
        }
        table_[a] = img;
    }
}

FqElem Embedding::operator()(const FqElem& a) const {
    if (a.ctx() != src_.get() && !(a.ctx() && a.ctx()->structurally_equal(*src_)))
        throw ContextMismatch("element does not belong to the embedding source field");
    return FqElem(dst_.get(), table_[a.code()]);
}

Embedding field_embed(const FieldPtr& src, const FieldPtr& dst) { return Embedding(src, dst); }

} // namespace fqzeta

#include "fqzeta/special.hpp"

#include <algorithm>

#include "fqzeta/errors.hpp"

namespace fqzeta {

bool BetaTuple::all_positive() const {
    for (auto& b : betas)
        if (b <= 0) return false;
    return true;
}

Nat BetaTuple::sum() const {
    Nat s = 0;
    for (auto& b : betas) s += b;
    return s;
}

std::vector<std::uint32_t> BetaTuple::support() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < betas.size(); ++i)
        if (betas[i] > 0) out.push_back(i);
    return out;
}

BetaTuple BetaTuple::survivors() const {
    BetaTuple out;
    for (auto& b : betas)
        if (b > 0) out.betas.push_back(b);
    return out;
}

BetaTuple BetaTuple::scaled(const Nat& factor) const {
    BetaTuple out = *this;
    for (auto& b : out.betas) b *= factor;
    return out;
}

std::string BetaTuple::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (i) out += ",";
        out += betas[i].get_str();
    }
    return out + ")";
}

std::uint64_t phi_degree(const BetaTuple& betas, const FieldCtx& f) {
    BetaTuple pos = betas.survivors();
    if (pos.betas.empty()) return 0;
    for (auto& b : pos.betas)
        if (b < 0) throw InvalidArgument("negative exponent in beta tuple");
    std::uint64_t best = ~std::uint64_t(0);
    Nat pi = 1;
    for (std::uint32_t i = 0; i < f.e; ++i) {
        std::uint64_t total = 0;
        for (auto& b : pos.betas) total += length_l(pi * b, f.q);
        best = std::min(best, total / (f.q - 1));
        pi *= f.p;
    }
    return best;
}

namespace {

std::vector<std::uint64_t> betas_u64(const BetaTuple& betas) {
    std::vector<std::uint64_t> out;
    out.reserve(betas.betas.size());
    for (auto& b : betas.betas) out.push_back(to_u64(b, "beta"));
    return out;
}

void tripwire_check(const CoeffTensor& t, std::uint32_t d, std::uint64_t phi, const BetaTuple& betas) {
    for (auto c : t.cells)
        if (c)
            throw TheoremViolation("polynomiality tripwire: the t0^" + std::to_string(d) +
                                   " coefficient of z" + betas.to_string() + " is nonzero beyond the degree " +
                                   std::to_string(phi));
}

SpecialPoly direct_impl(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts, bool reference) {
    auto b64 = betas_u64(betas);
    std::uint64_t phi = phi_degree(betas, *f);
    std::uint64_t d_top = opts.d_max ? *opts.d_max : phi + 2;
    // Refuse before computing anything, naming the first unaffordable degree.
    for (std::uint32_t d = 0; d <= d_top; ++d)
        check_enumeration_budget(*f, d, opts.enumeration_budget);

    MultiPoly acc(f.get(), std::uint32_t(b64.size()) + 1);
    KernelOpts kopts = opts.kernel();
    for (std::uint32_t d = 0; d <= d_top; ++d) {
        if (reference) {
            MultiPoly coeff = direct_coeff_reference(*f, b64, d);
            if (d > phi) {
                if (!coeff.is_zero())
                    throw TheoremViolation("polynomiality tripwire: the t0^" + std::to_string(d) +
                                           " coefficient of z" + betas.to_string() +
                                           " is nonzero beyond the degree " + std::to_string(phi));
                continue;
            }
            std::vector<Exp> key(acc.num_vars());
            for (std::size_t i = 0; i < coeff.term_count(); ++i) {
                auto ex = coeff.exp(i);
                key.assign(ex.begin(), ex.end());
                key[0] = Exp(d);
                acc.push_term(key, coeff.coeff(i));
            }
        } else {
            CoeffTensor t = direct_coeff_tensor(*f, b64, d, kopts);
            if (d > phi) {
                tripwire_check(t, d, phi, betas);
                continue;
            }
            append_tensor_terms(acc, t, d);
        }
    }
    acc.normalize();
    std::vector<Exp> zero(acc.num_vars(), 0);
    if (acc.coeff_at(zero) != 1)
        throw TheoremViolation("the constant term of z" + betas.to_string() + " is not 1");
    return SpecialPoly{std::move(acc), Provenance::Direct, betas};
}

} // namespace

SpecialPoly z_direct(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts) {
    return direct_impl(betas, f, opts, false);
}

SpecialPoly z_direct_reference(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts) {
    return direct_impl(betas, f, opts, true);
}

SpecialPoly z_recursive_ones(std::uint32_t s, const FieldPtr& f, const ComputeOpts& opts) {
    OnesOpts oo;
    oo.orbit_budget = opts.orbit_budget;
    OnesSeries series = ones_series(f.get(), s, oo);
    MultiPoly poly = ones_expand(series, opts.term_budget);
    return SpecialPoly{std::move(poly), Provenance::Recursive, BetaTuple::ones(s)};
}

namespace {

struct SlotPlan {
    // one entry per fresh variable of the ones polynomial
    std::vector<std::uint32_t> target; // ambient variable index (1-based var id)
    std::vector<std::uint64_t> weight; // q^k
};

SlotPlan make_slots(const BetaTuple& betas, const FieldCtx& f) {
    SlotPlan plan;
    for (std::uint32_t i = 0; i < betas.betas.size(); ++i) {
        if (betas.betas[i] == 0) continue;
        DigitExpansion ex = digits_base_q(betas.betas[i], f.q);
        Nat w = 1;
        for (std::size_t k = 0; k < ex.digits.size(); ++k) {
            for (std::uint32_t rep = 0; rep < ex.digits[k]; ++rep) {
                plan.target.push_back(i + 1);
                plan.weight.push_back(to_u64(w, "substitution weight q^k"));
            }
            w *= f.q;
        }
    }
    return plan;
}

} // namespace

SpecialPoly z_general(const BetaTuple& betas, const FieldPtr& f, ZMethod method, const ComputeOpts& opts) {
    for (auto& b : betas.betas)
        if (b < 0) throw InvalidArgument("negative exponent in beta tuple");
    if (method == ZMethod::Direct) {
        SpecialPoly out = z_direct(betas, f, opts);
        return out;
    }

    auto b64 = betas_u64(betas);
    std::uint32_t s = betas.s();
    SlotPlan plan = make_slots(betas, *f);
    std::uint32_t L = std::uint32_t(plan.target.size());

    OnesOpts oo;
    oo.orbit_budget = opts.orbit_budget;
    OnesSeries series = ones_series(f.get(), L, oo);
    Nat work = series.expanded_term_count();
    if (work > Nat(static_cast<unsigned long>(opts.expansion_budget)))
        throw BudgetError("specializing the ones series for z" + betas.to_string() + " needs " + work.get_str() +
                          " orbit expansions, over the budget of " + std::to_string(opts.expansion_budget));

    MultiPoly acc(f.get(), s + 1);
    for (std::size_t d = 0; d < series.layers.size(); ++d) {
        if (series.layers[d].empty()) continue;
        // dense image tensor for this t0 degree
        std::vector<std::uint64_t> dims(s), strides(s, 1);
        Nat cells_exact = 1;
        for (std::uint32_t i = 0; i < s; ++i) {
            dims[i] = b64[i] * d + 1;
            cells_exact *= static_cast<unsigned long>(dims[i]);
        }
        if (cells_exact > Nat(static_cast<unsigned long>(opts.tensor_budget)))
            throw BudgetError("image tensor at degree " + std::to_string(d) + " needs " + cells_exact.get_str() +
                                  " cells, over the budget of " + std::to_string(opts.tensor_budget),
                              std::int64_t(d));
        std::uint64_t cells = to_u64(cells_exact, "tensor cells");
        for (std::uint32_t i = s; i-- > 1;) strides[i - 1] = strides[i] * dims[i];
        std::vector<std::uint16_t> tensor(cells, 0);

        for (auto& [multiset, c] : series.layers[d]) {
            std::vector<Exp> perm = multiset;
            do {
                std::uint64_t idx = 0;
                for (std::uint32_t j = 0; j < L; ++j) {
                    if (!perm[j]) continue;
                    idx += std::uint64_t(perm[j]) * plan.weight[j] * strides[plan.target[j] - 1];
                }
                tensor[idx] = f->add(tensor[idx], c);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }

        CoeffTensor ct;
        ct.dims = dims;
        ct.cells = std::move(tensor);
        append_tensor_terms(acc, ct, std::uint32_t(d));
    }
    acc.normalize();
    return SpecialPoly{std::move(acc), Provenance::Specialized, betas};
}

bool direct_within_budget(const BetaTuple& betas, const FieldCtx& f, const ComputeOpts& opts) {
    for (auto& b : betas.betas)
        if (b < 0 || mpz_sizeinbase(b.get_mpz_t(), 2) > 40) return false;
    std::uint64_t phi = phi_degree(betas, f);
    std::uint64_t d_top = opts.d_max ? *opts.d_max : phi + 2;
    if (monic_count(f, std::uint32_t(d_top)) > Nat(static_cast<unsigned long>(opts.enumeration_budget)))
        return false;
    Nat cells = 1;
    for (auto& b : betas.betas) cells *= b * static_cast<unsigned long>(d_top) + 1;
    return cells <= Nat(static_cast<unsigned long>(opts.tensor_budget));
}

SpecialPoly z_auto(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts) {
    if (direct_within_budget(betas, *f, opts)) return z_direct(betas, f, opts);
    return z_general(betas, f, ZMethod::ViaOnes, opts);
}

FrobeniusCheck frobenius_twist_check(const BetaTuple& betas, std::uint32_t i, const FieldPtr& f,
                                     const ComputeOpts& opts) {
    SpecialPoly base = z_auto(betas, f, opts);
    MultiPoly lhs = frobenius_power(base.poly, i);

    Nat pi = nat_pow(Nat(f->p), i);
    BetaTuple scaled = betas.scaled(pi);
    SpecialPoly twisted = z_auto(scaled, f, opts);
    std::vector<VarTarget> map(twisted.poly.num_vars());
    map[0] = VarTarget::var_power(0, to_u64(pi, "p^i"));
    MultiPoly rhs = substitute(twisted.poly, map);

    return FrobeniusCheck{lhs == rhs, std::move(lhs), std::move(rhs)};
}

WitnessSpec witness_specialization(const BetaTuple& betas, const FieldCtx& f) {
    if (!betas.all_positive())
        throw InvalidArgument("witness specialization needs positive exponents");
    std::uint32_t s = betas.s();
    WitnessSpec out;
    out.B = 0;
    out.map.assign(std::size_t(s) + 1, VarTarget::keep());
    Nat pe1 = nat_pow(Nat(f.p), f.e - 1);
    std::uint32_t m_prev = 0;
    Nat q_m_prev = 1;
    for (std::uint32_t j = 0; j < s; ++j) {
        if (j > 0) {
            // least m_j with q^(m_j) > q^(m_{j-1}) * p^(e-1) * beta_j, where
            // beta_j is the previous summand's exponent
            Nat bound = q_m_prev * pe1 * betas.betas[j - 1];
            std::uint32_t m = m_prev + 1;
            Nat qm = q_m_prev * f.q;
            while (qm <= bound) {
                qm *= f.q;
                ++m;
            }
            out.m.push_back(m);
            m_prev = m;
            q_m_prev = qm;
        }
        out.B += q_m_prev * betas.betas[j];
        out.map[std::size_t(j) + 1] = VarTarget::var_power(1, to_u64(q_m_prev, "witness weight q^m"));
    }
    // carry-free digit identity
    Nat pi = 1;
    for (std::uint32_t i = 0; i < f.e; ++i) {
        std::uint64_t lhs = length_l(pi * out.B, f.q);
        std::uint64_t rhs = 0;
        for (auto& b : betas.betas) rhs += length_l(pi * b, f.q);
        if (lhs != rhs)
            throw TheoremViolation("witness construction failed the carry-free digit identity for i = " +
                                   std::to_string(i));
        pi *= f.p;
    }
    return out;
}

} // namespace fqzeta

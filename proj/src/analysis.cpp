#include "fqzeta/analysis.hpp"

#include <algorithm>

#include "fqzeta/errors.hpp"
#include "fqzeta/kernel.hpp"

namespace fqzeta {

ZeroReport trivial_zero_report(const BetaTuple& betas, const FieldPtr& f, const ComputeOpts& opts) {
    for (auto& b : betas.betas)
        if (b < 0) throw InvalidArgument("negative exponent in beta tuple");
    SpecialPoly z = z_auto(betas, f, opts);
    ZeroReport rep;
    rep.betas = betas;
    rep.phi = phi_degree(betas, *f);
    rep.degree = z.poly.degree_in_t0();
    rep.value_at_one = eval_t0(z.poly, 1);
    rep.multiplicity = multiplicity_at_t0(z.poly, 1);
    Nat total = betas.sum();
    rep.predicted_zero = total > 0 && total % (f->q - 1) == 0;
    bool has_zero = rep.multiplicity >= 1;
    if (rep.predicted_zero != has_zero || (rep.predicted_zero && rep.multiplicity != 1))
        throw TheoremViolation("trivial-zero prediction failed for z" + betas.to_string() + ": multiplicity " +
                               std::to_string(rep.multiplicity) + ", predicted " +
                               (rep.predicted_zero ? "simple zero" : "no zero"));
    return rep;
}

InvarianceReport degree_invariance_check(const BetaTuple& betas, const std::vector<DigitPerm>& perms,
                                         const FieldPtr& f, const ComputeOpts& opts) {
    if (perms.size() != betas.betas.size())
        throw InvalidArgument("need one digit permutation per exponent");
    if (!betas.all_positive())
        throw InvalidArgument("degree invariance needs positive exponents");
    InvarianceReport rep;
    rep.betas = betas;
    rep.images.betas.reserve(betas.betas.size());
    for (std::size_t i = 0; i < perms.size(); ++i)
        rep.images.betas.push_back(perm_apply(perms[i], betas.betas[i], f->q));
    rep.phi_before = phi_degree(betas, *f);
    rep.phi_after = phi_degree(rep.images, *f);
    if (direct_within_budget(betas, *f, opts) && direct_within_budget(rep.images, *f, opts)) {
        rep.computed = true;
        rep.degree_before = z_direct(betas, f, opts).poly.degree_in_t0();
        rep.degree_after = z_direct(rep.images, f, opts).poly.degree_in_t0();
    }
    return rep;
}

std::uint64_t sheats_degree(const Nat& beta, const FieldCtx& f) {
    if (beta < 1) throw InvalidArgument("sheats degree needs a positive exponent");
    return phi_degree(BetaTuple(std::vector<Nat>{beta}), f);
}

SheatsReport sheats_check(const Nat& beta, const FieldPtr& f, const ComputeOpts& opts) {
    SheatsReport rep;
    rep.beta = beta;
    rep.formula = sheats_degree(beta, *f);
    BetaTuple tuple(std::vector<Nat>{beta});
    if (direct_within_budget(tuple, *f, opts))
        rep.computed = z_direct(tuple, f, opts).poly.degree_in_t0();
    return rep;
}

namespace {

std::uint16_t character_value(const DirichletSpec& spec, const Embedding& emb,
                              const std::vector<std::uint16_t>& monic_codes) {
    const FieldCtx& ext = *spec.ext;
    std::uint16_t chi = 1;
    for (std::size_t i = 0; i < spec.lambdas.size() && chi; ++i) {
        std::uint16_t val = 0;
        for (std::size_t j = monic_codes.size(); j-- > 0;) {
            val = ext.mul(val, spec.lambdas[i]);
            val = ext.add(val, emb.map(monic_codes[j]));
        }
        chi = ext.mul(chi, ext.pow(val, spec.exponents.betas[i]));
    }
    return chi;
}

} // namespace

bool character_is_multiplicative(const DirichletSpec& spec, const FieldPtr& base, const MonicUPoly& a,
                                 const MonicUPoly& b) {
    Embedding emb = field_embed(base, spec.ext);
    // product of the two monic polynomials over the base field
    std::vector<std::uint16_t> prod(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            prod[i + j] = base->add(prod[i + j], base->mul(a.coeffs[i], b.coeffs[j]));
    std::uint16_t lhs = character_value(spec, emb, prod);
    std::uint16_t rhs = spec.ext->mul(character_value(spec, emb, a.coeffs), character_value(spec, emb, b.coeffs));
    return lhs == rhs;
}

DirichletResult dirichlet_specialize(const DirichletSpec& spec, const FieldPtr& base,
                                     const ComputeOpts& opts) {
    if (spec.lambdas.size() != spec.exponents.betas.size())
        throw InvalidArgument("need one lambda per character exponent");
    for (auto c : spec.lambdas)
        if (c >= spec.ext->q) throw InvalidArgument("lambda code outside the extension field");
    if (spec.extra_beta < 0) throw InvalidArgument("negative exponent");
    Embedding emb = field_embed(base, spec.ext);

    std::uint32_t s = spec.exponents.s();
    BetaTuple full = spec.exponents;
    full.betas.push_back(spec.extra_beta);

    DirichletResult out;
    out.phi_unspecialized = phi_degree(full, *base);
    Nat total = full.sum();
    out.predicted_zero = total > 0 && total % (base->q - 1) == 0;

    // Route 1: direct summation over A_+(d), coefficients in ext[theta].
    std::uint64_t d_top = opts.d_max ? *opts.d_max : out.phi_unspecialized + 2;
    for (std::uint32_t d = 0; d <= d_top; ++d)
        check_enumeration_budget(*base, d, opts.enumeration_budget);
    MultiPoly acc(spec.ext.get(), 2);
    KernelOpts kopts = opts.kernel();
    for (std::uint32_t d = 0; d <= d_top; ++d) {
        CoeffTensor t = dirichlet_coeff_tensor(*base, emb, spec.lambdas, spec.exponents.betas,
                                               spec.extra_beta, d, kopts);
        if (d > out.phi_unspecialized) {
            for (auto c : t.cells)
                if (c)
                    throw TheoremViolation(
                        "polynomiality tripwire: the dirichlet t0^" + std::to_string(d) +
                        " coefficient is nonzero beyond the degree " + std::to_string(out.phi_unspecialized));
            continue;
        }
        append_tensor_terms(acc, t, d);
    }
    acc.normalize();
    out.poly = std::move(acc);

    // Route 2: specialize z(b_1,...,b_s,beta,t0) at t_i = lambda_i, keeping
    // the last variable as theta.
    SpecialPoly z = z_auto(full, base, opts);
    std::vector<VarTarget> map(z.poly.num_vars(), VarTarget::keep());
    for (std::uint32_t i = 0; i < s; ++i) map[i + 1] = VarTarget::constant(spec.lambdas[i]);
    MultiPoly img = substitute_embed(z.poly, map, emb);
    out.via_substitution = reindex_vars(img, 2, {0, s + 1});
    out.paths_agree = out.poly == out.via_substitution;

    out.vanishes_at_one = eval_t0(out.poly, 1).is_zero();
    if (out.predicted_zero && !out.vanishes_at_one)
        throw TheoremViolation("dirichlet special polynomial does not vanish at t0 = 1 despite the congruence");
    return out;
}

} // namespace fqzeta

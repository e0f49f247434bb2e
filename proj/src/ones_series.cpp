#include "fqzeta/ones_series.hpp"

#include <algorithm>

#include "fqzeta/errors.hpp"

namespace fqzeta {

std::int64_t OnesSeries::degree() const {
    for (std::size_t d = layers.size(); d-- > 0;)
        if (!layers[d].empty()) return std::int64_t(d);
    return -1;
}

namespace {

Nat orbit_size(const std::vector<Exp>& multiset) {
    // multinomial: n! / prod(mult_v!), multiset sorted ascending
    Nat n;
    mpz_fac_ui(n.get_mpz_t(), multiset.size());
    std::size_t i = 0;
    while (i < multiset.size()) {
        std::size_t j = i;
        while (j < multiset.size() && multiset[j] == multiset[i]) ++j;
        Nat f;
        mpz_fac_ui(f.get_mpz_t(), j - i);
        n /= f;
        i = j;
    }
    return n;
}

} // namespace

Nat OnesSeries::expanded_term_count() const {
    Nat total = 0;
    for (auto& layer : layers)
        for (auto& [multiset, c] : layer) total += orbit_size(multiset);
    return total;
}

OnesSeries ones_series(const FieldCtx* f, std::uint32_t s, const OnesOpts& opts) {
    std::uint32_t step = f->q - 1;
    std::vector<OnesSeries> Z(s + 1);
    std::uint64_t orbits_total = 0;
    for (std::uint32_t k = 0; k <= s; ++k) {
        OnesSeries& cur = Z[k];
        cur.f = f;
        cur.s = k;
        cur.layers.resize(1);
        cur.layers[0].emplace(std::vector<Exp>(k, 0), std::uint16_t(1));
        ++orbits_total;
        for (std::uint32_t m = step; m <= k; m += step) {
            const OnesSeries& src = Z[k - m];
            for (std::size_t d = 0; d < src.layers.size(); ++d) {
                if (src.layers[d].empty()) continue;
                if (cur.layers.size() <= d + 1) cur.layers.resize(d + 2);
                auto& dst = cur.layers[d + 1];
                for (auto& [lam, c] : src.layers[d]) {
                    std::vector<Exp> mu(k);
                    for (std::uint32_t z = 0; z < m; ++z) mu[z] = 0;
                    for (std::size_t i = 0; i < lam.size(); ++i) mu[m + i] = lam[i] + 1;
                    auto [it, fresh] = dst.emplace(std::move(mu), f->neg(c));
                    if (!fresh) throw Error("internal error: orbit collision in the ones recursion");
                    ++orbits_total;
                    if (orbits_total > opts.orbit_budget)
                        throw BudgetError("ones-series orbit count exceeds the budget of " +
                                          std::to_string(opts.orbit_budget));
                }
            }
        }
        while (!cur.layers.empty() && cur.layers.back().empty()) cur.layers.pop_back();
    }
    return std::move(Z[s]);
}

MultiPoly ones_expand(const OnesSeries& series, std::uint64_t term_budget) {
    Nat count = series.expanded_term_count();
    if (count > Nat(term_budget))
        throw BudgetError("expanding z(1,...,1) with s = " + std::to_string(series.s) + " needs " +
                          count.get_str() + " terms, over the budget of " + std::to_string(term_budget) +
                          " (the compressed form stays available)");
    MultiPoly out(series.f, series.s + 1);
    std::vector<Exp> key(series.s + 1);
    for (std::size_t d = 0; d < series.layers.size(); ++d) {
        for (auto& [multiset, c] : series.layers[d]) {
            std::vector<Exp> perm = multiset; // ascending = first permutation
            do {
                key[0] = Exp(d);
                std::copy(perm.begin(), perm.end(), key.begin() + 1);
                out.push_term(key, c);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    out.normalize();
    return out;
}

} // namespace fqzeta

#include "fqzeta/kernel.hpp"

#include <algorithm>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fqzeta/errors.hpp"

namespace fqzeta {
namespace {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// dense schoolbook product of small coefficient vectors
std::vector<std::uint16_t> mul_dense(const FieldCtx& f, const std::vector<std::uint16_t>& a,
                                     const std::vector<std::uint16_t>& b) {
    std::vector<std::uint16_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j]) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
    return out;
}

// split codes into e digit planes of uint8
void decompose_planes(const FieldCtx& f, const std::uint16_t* codes, std::size_t n, std::uint8_t* planes) {
    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t v = codes[j];
        for (std::uint32_t k = 0; k < f.e; ++k) {
            planes[k * n + j] = std::uint8_t(v % f.p);
            v /= f.p;
        }
    }
}

void reduce_planes(const FieldCtx& f, std::uint32_t* planes, std::size_t n_total) {
    for (std::size_t i = 0; i < n_total; ++i) planes[i] %= f.p;
}

void compose_codes(const FieldCtx& f, const std::uint32_t* planes, std::size_t n, std::uint16_t* codes) {
    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t code = 0, mul = 1;
        for (std::uint32_t k = 0; k < f.e; ++k) {
            code += (planes[k * n + j] % f.p) * mul;
            mul *= f.p;
        }
        codes[j] = std::uint16_t(code);
    }
}

// number of accumulation rounds a uint32 plane cell survives before a
// reduction is required
std::uint64_t rounds_before_reduce(const FieldCtx& f) {
    std::uint64_t per_round = std::uint64_t(f.e) * (f.p - 1) * (f.p - 1);
    return (0xffffffffULL - (f.p - 1)) / per_round;
}

} // namespace

std::vector<std::uint16_t> power_codes(const FieldCtx& f, std::span<const std::uint16_t> monic,
                                       std::uint64_t beta) {
    if (beta == 0) return {1};
    std::size_t d = monic.size() - 1;
    std::uint64_t final_deg = beta * d;
    if (final_deg > (1ull << 31)) throw BudgetError("power degree beta*d exceeds the supported range");

    std::vector<std::uint16_t> cur = {1};
    const std::vector<std::uint16_t> base(monic.begin(), monic.end());
    std::uint64_t scale = 1; // p^k
    std::uint64_t rest = beta;
    std::vector<std::uint32_t> acc; // uint32 planes scratch
    std::vector<std::uint8_t> cur_planes;
    for (std::uint32_t k = 0; rest != 0; ++k, rest /= f.p) {
        std::uint32_t digit = std::uint32_t(rest % f.p);
        if (digit) {
            // w = monic^digit, then Frobenius^k: exponents *p^k, coeffs^(p^k)
            std::vector<std::uint16_t> w = base;
            for (std::uint32_t t = 1; t < digit; ++t) w = mul_dense(f, w, base);
            Nat pk = nat_pow(Nat(f.p), k);
            std::size_t new_len = cur.size() + (w.size() - 1) * scale;
            acc.assign(std::size_t(f.e) * new_len, 0);
            cur_planes.resize(std::size_t(f.e) * cur.size());
            decompose_planes(f, cur.data(), cur.size(), cur_planes.data());
            std::uint8_t mat_buf[16 * 16];
            for (std::size_t j = 0; j < w.size(); ++j) {
                if (!w[j]) continue;
                std::uint16_t c = f.pow(w[j], pk);
                if (!c) continue;
                const std::uint8_t* M = f.scalar_matrix(c);
                if (!M) {
                    f.scalar_matrix_into(c, mat_buf);
                    M = mat_buf;
                }
                std::size_t off = j * scale;
                for (std::uint32_t kk = 0; kk < f.e; ++kk) {
                    std::uint32_t* dst = acc.data() + kk * new_len + off;
                    for (std::uint32_t l = 0; l < f.e; ++l) {
                        std::uint8_t m = M[kk * f.e + l];
                        if (!m) continue;
                        const std::uint8_t* src = cur_planes.data() + l * cur.size();
                        for (std::size_t x = 0; x < cur.size(); ++x) dst[x] += std::uint32_t(m) * src[x];
                    }
                }
            }
            reduce_planes(f, acc.data(), acc.size());
            cur.assign(new_len, 0);
            compose_codes(f, acc.data(), new_len, cur.data());
        }
        scale *= f.p;
    }
    if (cur.size() != final_deg + 1) throw Error("internal error: power length mismatch");
    return cur;
}

namespace {

/// Shared state for one coefficient accumulation.
struct DirectJob {
    const FieldCtx& f;
    std::span<const std::uint64_t> betas;
    std::uint32_t d;
    std::vector<std::uint64_t> dims;
    std::vector<std::uint64_t> strides; // last axis stride 1
    std::uint64_t cells = 1;

    explicit DirectJob(const FieldCtx& field, std::span<const std::uint64_t> b, std::uint32_t deg,
                       const KernelOpts& opts)
        : f(field), betas(b), d(deg) {
        check_enumeration_budget(f, d, opts.enumeration_budget);
        dims.resize(betas.size());
        Nat cells_exact = 1;
        for (std::size_t i = 0; i < betas.size(); ++i) {
            std::uint64_t n = betas[i] * d + 1;
            if (betas[i] != 0 && (n - 1) / betas[i] != d)
                throw BudgetError("coefficient tensor axis exceeds the supported range");
            if (n > (1ull << 31)) throw BudgetError("coefficient tensor axis exceeds the supported range");
            dims[i] = n;
            cells_exact *= static_cast<unsigned long>(n);
        }
        if (cells_exact > Nat(static_cast<unsigned long>(opts.tensor_budget)))
            throw BudgetError("coefficient tensor at degree " + std::to_string(d) + " needs " +
                                  cells_exact.get_str() + " cells, over the budget of " +
                                  std::to_string(opts.tensor_budget) + " (raise --tensor-budget to proceed)",
                              d);
        cells = to_u64(cells_exact, "tensor cells");
        strides.assign(betas.size(), 1);
        for (std::size_t i = betas.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
    }
};

/// Per-monic data: dense power vectors per distinct exponent.
struct PowerSet {
    std::vector<std::uint64_t> distinct;           // distinct beta values
    std::vector<std::size_t> which;                // betas index -> distinct index
    std::vector<std::vector<std::uint16_t>> pw;    // power codes per distinct
};

PowerSet make_power_set(std::span<const std::uint64_t> betas) {
    PowerSet ps;
    ps.which.resize(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
        auto it = std::find(ps.distinct.begin(), ps.distinct.end(), betas[i]);
        if (it == ps.distinct.end()) {
            ps.which[i] = ps.distinct.size();
            ps.distinct.push_back(betas[i]);
        } else {
            ps.which[i] = std::size_t(it - ps.distinct.begin());
        }
    }
    ps.pw.resize(ps.distinct.size());
    return ps;
}

/// Accumulates prod_i v_i into uint32 planes. The last two axes are fused
/// into one contiguous block per monic, so each prefix combination issues a
/// single long vectorized accumulation instead of many short rows.
struct OuterAccumulator {
    const DirectJob& job;
    const FieldCtx& f;
    std::uint32_t s;
    std::uint32_t prefix_depth;         // axes walked with nonzero skipping
    std::vector<std::uint32_t>& planes; // e * cells
    std::vector<std::vector<std::uint32_t>> nz_idx;
    std::vector<std::vector<std::uint16_t>> nz_code;
    std::vector<std::uint16_t> block_codes; // fused block, reused per monic
    std::vector<std::uint8_t> block_planes;
    std::size_t nblock = 1;

    OuterAccumulator(const DirectJob& j, std::vector<std::uint32_t>& acc)
        : job(j), f(j.f), s(std::uint32_t(j.betas.size())), planes(acc) {
        prefix_depth = s >= 2 ? s - 2 : 0;
        nz_idx.resize(prefix_depth);
        nz_code.resize(prefix_depth);
    }

    void add_monic(const PowerSet& ps) {
        if (s == 0) {
            planes[0] += 1; // coordinate 0 of the constant 1
            return;
        }
        for (std::uint32_t i = 0; i < prefix_depth; ++i) {
            auto& v = ps.pw[ps.which[i]];
            nz_idx[i].clear();
            nz_code[i].clear();
            for (std::uint32_t x = 0; x < v.size(); ++x)
                if (v[x]) {
                    nz_idx[i].push_back(x);
                    nz_code[i].push_back(v[x]);
                }
        }
        if (s == 1) {
            auto& last = ps.pw[ps.which[0]];
            nblock = last.size();
            block_planes.resize(std::size_t(f.e) * nblock);
            decompose_planes(f, last.data(), nblock, block_planes.data());
        } else {
            auto& a = ps.pw[ps.which[s - 2]];
            auto& b = ps.pw[ps.which[s - 1]];
            nblock = a.size() * b.size();
            block_codes.assign(nblock, 0);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!a[i]) continue;
                std::uint16_t* row = block_codes.data() + i * b.size();
                for (std::size_t j = 0; j < b.size(); ++j)
                    if (b[j]) row[j] = f.mul(a[i], b[j]);
            }
            block_planes.resize(std::size_t(f.e) * nblock);
            decompose_planes(f, block_codes.data(), nblock, block_planes.data());
        }
        walk(0, 0, 1);
    }

    void walk(std::uint32_t depth, std::uint64_t off, std::uint16_t m) {
        if (depth == prefix_depth) {
            axpy(off, m);
            return;
        }
        const auto& idx = nz_idx[depth];
        const auto& code = nz_code[depth];
        for (std::size_t t = 0; t < idx.size(); ++t)
            walk(depth + 1, off + idx[t] * job.strides[depth], f.mul(m, code[t]));
    }

    void axpy(std::uint64_t off, std::uint16_t m) {
        std::uint8_t mat_buf[16 * 16];
        const std::uint8_t* M = f.scalar_matrix(m);
        if (!M) {
            f.scalar_matrix_into(m, mat_buf);
            M = mat_buf;
        }
        std::uint64_t cells = job.cells;
        if (f.e == 1) {
            std::uint32_t mm = M[0];
            std::uint32_t* dst = planes.data() + off;
            const std::uint8_t* src = block_planes.data();
            for (std::size_t x = 0; x < nblock; ++x) dst[x] += mm * src[x];
            return;
        }
        for (std::uint32_t k = 0; k < f.e; ++k) {
            std::uint32_t* dst = planes.data() + std::size_t(k) * cells + off;
            for (std::uint32_t l = 0; l < f.e; ++l) {
                std::uint8_t c = M[k * f.e + l];
                if (!c) continue;
                const std::uint8_t* src = block_planes.data() + std::size_t(l) * nblock;
                for (std::size_t x = 0; x < nblock; ++x) dst[x] += std::uint32_t(c) * src[x];
            }
        }
    }
};

} // namespace

CoeffTensor direct_coeff_tensor(const FieldCtx& f, std::span<const std::uint64_t> betas,
                                std::uint32_t d, const KernelOpts& opts) {
    DirectJob job(f, betas, d, opts);
    MonicEnumerator en(&f, d);
    std::uint64_t total = en.count();

    std::size_t plane_len = std::size_t(f.e) * job.cells;
    std::uint64_t plane_bytes = std::uint64_t(plane_len) * sizeof(std::uint32_t);
    int want = opts.parallel ? max_threads() : 1;
    if (plane_bytes > 0) {
        std::uint64_t fit = std::max<std::uint64_t>(1, opts.thread_memory_budget / std::max<std::uint64_t>(plane_bytes, 1));
        want = int(std::min<std::uint64_t>(std::uint64_t(want), fit));
    }
    if (std::uint64_t(want) > total && total > 0) want = int(total);
    if (want < 1) want = 1;

    std::uint64_t reduce_every = rounds_before_reduce(f);
    std::vector<std::vector<std::uint32_t>> partial;
    partial.resize(std::size_t(want));

#ifdef _OPENMP
#pragma omp parallel num_threads(want) if (want > 1)
#endif
    {
#ifdef _OPENMP
        int tid = omp_get_thread_num();
        int nth = omp_get_num_threads();
#else
        int tid = 0, nth = 1;
#endif
        std::uint64_t lo = total * std::uint64_t(tid) / std::uint64_t(nth);
        std::uint64_t hi = total * std::uint64_t(tid + 1) / std::uint64_t(nth);
        auto& planes = partial[std::size_t(tid)];
        planes.assign(plane_len, 0);
        OuterAccumulator acc(job, planes);
        PowerSet ps = make_power_set(betas);
        std::vector<std::uint16_t> codes(d + 1);
        std::uint64_t since_reduce = 0;
        for (std::uint64_t k = lo; k < hi; ++k) {
            en.codes_at(k, codes.data());
            for (std::size_t i = 0; i < ps.distinct.size(); ++i)
                ps.pw[i] = power_codes(f, codes, ps.distinct[i]);
            acc.add_monic(ps);
            if (++since_reduce >= reduce_every) {
                reduce_planes(f, planes.data(), planes.size());
                since_reduce = 0;
            }
        }
        reduce_planes(f, planes.data(), planes.size());
    }

    // order-independent exact merge
    std::vector<std::uint32_t> merged(plane_len, 0);
    for (auto& pl : partial) {
        if (pl.empty()) continue;
        for (std::size_t i = 0; i < plane_len; ++i) merged[i] += pl[i];
    }
    reduce_planes(f, merged.data(), merged.size());

    CoeffTensor out;
    out.dims = job.dims;
    out.cells.assign(job.cells, 0);
    // compose: plane k of cell j sits at merged[k*cells + j]
    for (std::uint64_t j = 0; j < job.cells; ++j) {
        std::uint32_t code = 0, mul = 1;
        for (std::uint32_t k = 0; k < f.e; ++k) {
            code += merged[std::size_t(k) * job.cells + j] * mul;
            mul *= f.p;
        }
        out.cells[j] = std::uint16_t(code);
    }
    return out;
}

CoeffTensor dirichlet_coeff_tensor(const FieldCtx& base, const Embedding& emb,
                                   std::span<const std::uint16_t> lambdas,
                                   std::span<const Nat> lambda_exps, const Nat& beta,
                                   std::uint32_t d, const KernelOpts& opts) {
    if (lambdas.size() != lambda_exps.size())
        throw InvalidArgument("lambda values and exponents differ in length");
    const FieldCtx& ext = *emb.dst();
    check_enumeration_budget(base, d, opts.enumeration_budget);
    std::uint64_t beta64 = to_u64(beta, "dirichlet exponent beta");
    std::uint64_t n = beta64 * d + 1;
    if (n > opts.tensor_budget)
        throw BudgetError("dirichlet coefficient needs " + std::to_string(n) + " cells, over the tensor budget", d);

    MonicEnumerator en(&base, d);
    std::uint64_t total = en.count();
    std::size_t plane_len = std::size_t(ext.e) * n;
    int want = opts.parallel ? max_threads() : 1;
    if (std::uint64_t(want) > total && total > 0) want = int(total);
    if (want < 1) want = 1;
    std::uint64_t reduce_every = rounds_before_reduce(ext);
    std::vector<std::vector<std::uint32_t>> partial;
    partial.resize(std::size_t(want));

#ifdef _OPENMP
#pragma omp parallel num_threads(want) if (want > 1)
#endif
    {
#ifdef _OPENMP
        int tid = omp_get_thread_num();
        int nth = omp_get_num_threads();
#else
        int tid = 0, nth = 1;
#endif
        std::uint64_t lo = total * std::uint64_t(tid) / std::uint64_t(nth);
        std::uint64_t hi = total * std::uint64_t(tid + 1) / std::uint64_t(nth);
        auto& planes = partial[std::size_t(tid)];
        planes.assign(plane_len, 0);
        std::vector<std::uint16_t> codes(d + 1), ext_codes(d + 1);
        std::vector<std::uint8_t> pw_planes;
        std::uint8_t mat_buf[16 * 16];
        std::uint64_t since_reduce = 0;
        for (std::uint64_t k = lo; k < hi; ++k) {
            en.codes_at(k, codes.data());
            for (std::size_t i = 0; i <= d; ++i) ext_codes[i] = emb.map(codes[i]);
            // character value prod a(lambda_i)^(exp_i) in the extension
            std::uint16_t chi = 1;
            for (std::size_t i = 0; i < lambdas.size() && chi; ++i) {
                std::uint16_t val = 0;
                for (std::size_t j = ext_codes.size(); j-- > 0;) {
                    val = ext.mul(val, lambdas[i]);
                    val = ext.add(val, ext_codes[j]);
                }
                chi = ext.mul(chi, ext.pow(val, lambda_exps[i]));
            }
            if (chi) {
                auto pw = power_codes(ext, ext_codes, beta64);
                pw_planes.resize(std::size_t(ext.e) * pw.size());
                decompose_planes(ext, pw.data(), pw.size(), pw_planes.data());
                const std::uint8_t* M = ext.scalar_matrix(chi);
                if (!M) {
                    ext.scalar_matrix_into(chi, mat_buf);
                    M = mat_buf;
                }
                for (std::uint32_t kk = 0; kk < ext.e; ++kk) {
                    std::uint32_t* dst = planes.data() + std::size_t(kk) * n;
                    for (std::uint32_t l = 0; l < ext.e; ++l) {
                        std::uint8_t c = M[kk * ext.e + l];
                        if (!c) continue;
                        const std::uint8_t* src = pw_planes.data() + std::size_t(l) * pw.size();
                        for (std::size_t x = 0; x < pw.size(); ++x) dst[x] += std::uint32_t(c) * src[x];
                    }
                }
                if (++since_reduce >= reduce_every) {
                    reduce_planes(ext, planes.data(), planes.size());
                    since_reduce = 0;
                }
            }
        }
        reduce_planes(ext, planes.data(), planes.size());
    }

    std::vector<std::uint32_t> merged(plane_len, 0);
    for (auto& pl : partial) {
        if (pl.empty()) continue;
        for (std::size_t i = 0; i < plane_len; ++i) merged[i] += pl[i];
    }
    reduce_planes(ext, merged.data(), merged.size());

    CoeffTensor out;
    out.dims = {n};
    out.cells.assign(n, 0);
    for (std::uint64_t j = 0; j < n; ++j) {
        std::uint32_t code = 0, mul = 1;
        for (std::uint32_t k = 0; k < ext.e; ++k) {
            code += merged[std::size_t(k) * n + j] * mul;
            mul *= ext.p;
        }
        out.cells[j] = std::uint16_t(code);
    }
    return out;
}

MultiPoly direct_coeff_reference(const FieldCtx& f, std::span<const std::uint64_t> betas,
                                 std::uint32_t d) {
    std::uint32_t nv = std::uint32_t(betas.size()) + 1;
    MonicEnumerator en(&f, d);
    MultiPoly sum(&f, nv);
    for (std::uint64_t k = 0; k < en.count(); ++k) {
        MonicUPoly a = en.at(k);
        MultiPoly term = MultiPoly::constant(&f, nv, 1);
        for (std::size_t i = 0; i < betas.size(); ++i) {
            MultiPoly chi = chi_eval(a, std::uint32_t(i) + 1, nv);
            term = poly_mul(term, poly_pow(chi, Nat(static_cast<unsigned long>(betas[i]))));
        }
        sum = poly_add(sum, term);
    }
    return sum;
}

void append_tensor_terms(MultiPoly& out, const CoeffTensor& t, std::uint32_t d) {
    std::uint32_t s = std::uint32_t(t.dims.size());
    std::vector<Exp> key(s + 1, 0);
    key[0] = d;
    if (s == 0) {
        if (t.cells[0]) out.push_term(key, t.cells[0]);
        return;
    }
    std::vector<std::uint64_t> idx(s, 0);
    for (std::uint64_t j = 0; j < t.cell_count(); ++j) {
        if (t.cells[j]) {
            for (std::uint32_t i = 0; i < s; ++i) key[i + 1] = Exp(idx[i]);
            out.push_term(key, t.cells[j]);
        }
        // odometer, last axis fastest (matches linear index with last stride 1)
        for (std::uint32_t i = s; i-- > 0;) {
            if (++idx[i] < t.dims[i]) break;
            idx[i] = 0;
        }
    }
}

} // namespace fqzeta

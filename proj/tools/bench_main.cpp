// Benchmark: serial sparse reference vs the dense tensor kernel, single
// thread and all threads, on the coefficients of one z(betas, t0). Results
// are checked for exact agreement while timing.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fqzeta/kernel.hpp"
#include "fqzeta/special.hpp"

using namespace fqzeta;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        fn();
        auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

MultiPoly tensor_poly(const FieldCtx* f, const CoeffTensor& t, std::uint32_t d) {
    MultiPoly out(f, std::uint32_t(t.dims.size()) + 1);
    append_tensor_terms(out, t, d);
    out.normalize();
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark the direct-summation kernels"};
    std::uint32_t p = 2, e = 1;
    std::string betas_text = "3,3";
    std::uint32_t d_cap = 0;
    int reps = 3;
    std::uint64_t ref_cell_limit = 300'000;
    app.add_option("--p", p, "characteristic");
    app.add_option("--e", e, "extension degree");
    app.add_option("--betas", betas_text, "comma-separated exponents");
    app.add_option("--d-max", d_cap, "highest coefficient degree (default phi+2)");
    app.add_option("--reps", reps, "repetitions, best-of timing");
    app.add_option("--reference-limit", ref_cell_limit,
                   "run the sparse reference only when q^d * cells is below this");
    CLI11_PARSE(app, argc, argv);

    FieldPtr f = field_create(p, e);
    std::vector<std::uint64_t> betas;
    {
        std::size_t i = 0;
        while (i < betas_text.size()) {
            std::size_t j = betas_text.find(',', i);
            if (j == std::string::npos) j = betas_text.size();
            betas.push_back(std::stoull(betas_text.substr(i, j - i)));
            i = j + 1;
        }
    }
    BetaTuple tuple = BetaTuple::of_u64(betas);
    std::uint32_t phi = std::uint32_t(phi_degree(tuple, *f));
    std::uint32_t d_top = d_cap ? d_cap : phi + 2;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("q=%u betas=%s phi=%u threads=%d\n", f->q, tuple.to_string().c_str(), phi, threads);
    std::printf("%4s %12s %14s %12s %12s %9s %6s\n", "d", "cells", "reference_ms", "serial_ms",
                "parallel_ms", "speedup", "equal");

    for (std::uint32_t d = 0; d <= d_top; ++d) {
        KernelOpts ser, par;
        ser.parallel = false;
        CoeffTensor ts, tp;
        double ms_ser = time_ms([&] { ts = direct_coeff_tensor(*f, betas, d, ser); }, reps);
        double ms_par = time_ms([&] { tp = direct_coeff_tensor(*f, betas, d, par); }, reps);
        bool equal = ts.cells == tp.cells;

        Nat work = monic_count(*f, d) * static_cast<unsigned long>(ts.cell_count());
        bool run_ref = work <= Nat(static_cast<unsigned long>(ref_cell_limit));
        double ms_ref = -1;
        if (run_ref) {
            MultiPoly ref;
            ms_ref = time_ms([&] { ref = direct_coeff_reference(*f, betas, d); }, reps);
            MultiPoly shifted(f.get(), ref.num_vars());
            std::vector<Exp> key(ref.num_vars());
            for (std::size_t i = 0; i < ref.term_count(); ++i) {
                auto ex = ref.exp(i);
                key.assign(ex.begin(), ex.end());
                key[0] = d;
                shifted.push_term(key, ref.coeff(i));
            }
            shifted.normalize();
            equal = equal && shifted == tensor_poly(f.get(), ts, d);
        }

        if (run_ref)
            std::printf("%4u %12llu %14.3f %12.3f %12.3f %8.2fx %6s\n", d,
                        (unsigned long long)ts.cell_count(), ms_ref, ms_ser, ms_par,
                        ms_par > 0 ? ms_ser / ms_par : 0.0, equal ? "yes" : "NO");
        else
            std::printf("%4u %12llu %14s %12.3f %12.3f %8.2fx %6s\n", d,
                        (unsigned long long)ts.cell_count(), "(skipped)", ms_ser, ms_par,
                        ms_par > 0 ? ms_ser / ms_par : 0.0, equal ? "yes" : "NO");
        if (!equal) return 1;
    }
    return 0;
}

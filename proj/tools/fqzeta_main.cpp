// Command-line front end: compute, degree, zeros, permute, verify, sweep,
// dirichlet. All output is deterministic for fixed flags; exit codes are
// 0 = ok, 1 = usage error, 2 = budget refusal, 3 = theorem violation.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <unistd.h>
#include <vector>

#include "CLI11.hpp"

#include "fqzeta/analysis.hpp"
#include "fqzeta/errors.hpp"
#include "fqzeta/io.hpp"
#include "fqzeta/special.hpp"
#include "fqzeta/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace fqzeta;

namespace {

struct CommonArgs {
    std::uint32_t p = 0;
    std::uint32_t e = 1;
    std::string format = "text";
    std::uint64_t budget = 10'000'000;
    std::uint64_t tensor_budget = std::uint64_t(1) << 27;
    bool serial = false;
    std::string cache_dir;

    ComputeOpts opts() const {
        ComputeOpts o;
        o.enumeration_budget = budget;
        o.tensor_budget = tensor_budget;
        o.parallel = !serial;
        return o;
    }
    FieldPtr field() const { return field_create(p, e); }
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_field = true) {
    if (needs_field) {
        cmd->add_option("--p", args.p, "characteristic (prime)")->required();
        cmd->add_option("--e", args.e, "extension degree over the prime field");
    }
    cmd->add_option("--format", args.format, "output format: text, json, csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--budget", args.budget, "enumeration budget: largest q^d summed per coefficient");
    cmd->add_option("--tensor-budget", args.tensor_budget, "dense coefficient cells allowed per degree");
    cmd->add_flag("--serial", args.serial, "disable OpenMP parallelism");
    cmd->add_option("--cache-dir", args.cache_dir,
                    "directory for content-addressed result caching (default: FQZETA_CACHE_DIR)");
}

BetaTuple parse_betas(const std::string& text) {
    BetaTuple out;
    if (text.empty()) return out;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        std::string item = text.substr(i, j - i);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument("--betas expects a comma-separated list of non-negative integers, e.g. 1,2");
        out.betas.emplace_back(item);
        i = j + 1;
    }
    return out;
}

std::vector<DigitPerm> parse_perms(const std::string& text, std::uint32_t s) {
    std::vector<DigitPerm> out;
    std::size_t i = 0;
    while (i <= text.size() && !text.empty()) {
        std::size_t j = text.find(';', i);
        if (j == std::string::npos) j = text.size();
        out.push_back(DigitPerm::parse(text.substr(i, j - i)));
        if (j == text.size()) break;
        i = j + 1;
    }
    if (out.size() == 1 && s > 1) out.assign(s, out[0]); // broadcast one perm
    if (out.size() != s)
        throw InvalidArgument("--perms expects one permutation per exponent (';'-separated) or a single one");
    return out;
}

std::string field_line(const FieldCtx& f) {
    std::string mod = "[";
    for (std::size_t i = 0; i < f.modulus.size(); ++i) {
        if (i) mod += ",";
        mod += std::to_string(f.modulus[i]);
    }
    mod += "]";
    return "field: p=" + std::to_string(f.p) + " e=" + std::to_string(f.e) + " q=" + std::to_string(f.q) +
           " modulus=" + mod;
}

std::string effective_cache_dir(const CommonArgs& args) {
    if (!args.cache_dir.empty()) return args.cache_dir;
    const char* env = std::getenv("FQZETA_CACHE_DIR");
    return env ? env : "";
}

SpecialPoly compute_with_cache(const CommonArgs& args, const BetaTuple& betas, ZMethod method,
                               const std::string& method_name) {
    FieldPtr f = args.field();
    std::string dir = effective_cache_dir(args);
    if (!dir.empty()) {
        if (auto cached = cache_load(dir, *f, betas, method_name)) {
            Provenance prov = method == ZMethod::Direct ? Provenance::Direct : Provenance::Specialized;
            return SpecialPoly{std::move(*cached), prov, betas};
        }
    }
    SpecialPoly out = z_general(betas, f, method, args.opts());
    if (!dir.empty()) cache_store(dir, *f, betas, method_name, out.poly);
    return out;
}

int cmd_compute(const CommonArgs& args, const std::string& betas_text, const std::string& method,
                std::optional<std::uint32_t> d_max) {
    BetaTuple betas = parse_betas(betas_text);
    FieldPtr f = args.field();
    CommonArgs adj = args;
    std::vector<std::pair<std::string, ZMethod>> methods;
    if (method == "direct" || method == "both") methods.emplace_back("direct", ZMethod::Direct);
    if (method == "via_ones" || method == "both") methods.emplace_back("via_ones", ZMethod::ViaOnes);
    if (methods.empty()) throw InvalidArgument("--method must be direct, via_ones, or both");

    std::vector<SpecialPoly> results;
    for (auto& [name, m] : methods) {
        CommonArgs a = adj;
        ComputeOpts o = a.opts();
        o.d_max = d_max;
        if (d_max) { // custom truncation bypasses the cache
            results.push_back(z_general(betas, f, m, o));
        } else {
            results.push_back(compute_with_cache(a, betas, m, name));
        }
    }
    bool equal = results.size() < 2 || results[0].poly == results[1].poly;

    if (args.format == "json") {
        Json j;
        j["field"] = field_to_json(*f);
        Json bl = Json::array();
        for (auto& b : betas.betas) bl.push_back(b.get_str());
        j["betas"] = bl;
        j["phi"] = phi_degree(betas, *f);
        for (std::size_t i = 0; i < methods.size(); ++i) j[methods[i].first] = poly_to_json(results[i].poly);
        if (methods.size() > 1) j["equal"] = equal;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << field_line(*f) << "\n";
        std::cout << "betas: " << betas.to_string() << "\n";
        std::cout << "phi: " << phi_degree(betas, *f) << "\n";
        for (std::size_t i = 0; i < methods.size(); ++i)
            std::cout << "z[" << methods[i].first << "]: " << pretty(results[i].poly) << "\n";
        if (methods.size() > 1) std::cout << "equal: " << (equal ? "yes" : "NO") << "\n";
    }
    if (methods.size() > 1 && !equal)
        throw TheoremViolation("the two computation routes disagree for z" + betas.to_string());
    return 0;
}

int cmd_degree(const CommonArgs& args, const std::string& betas_text) {
    BetaTuple betas = parse_betas(betas_text);
    FieldPtr f = args.field();
    std::uint64_t phi = phi_degree(betas, *f);
    std::optional<std::int64_t> computed;
    if (direct_within_budget(betas, *f, args.opts()))
        computed = z_direct(betas, f, args.opts()).poly.degree_in_t0();

    if (args.format == "json") {
        Json j;
        j["field"] = field_to_json(*f);
        Json bl = Json::array();
        for (auto& b : betas.betas) bl.push_back(b.get_str());
        j["betas"] = bl;
        j["phi"] = phi;
        if (computed) j["computed_degree"] = *computed;
        else j["computed_degree"] = nullptr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << field_line(*f) << "\n";
        std::cout << "betas: " << betas.to_string() << "\n";
        std::cout << "phi: " << phi << "\n";
        if (computed) std::cout << "computed_degree: " << *computed << "\n";
        else std::cout << "computed_degree: skipped (budget)\n";
    }
    return 0;
}

int cmd_zeros(const CommonArgs& args, const std::string& betas_text) {
    BetaTuple betas = parse_betas(betas_text);
    FieldPtr f = args.field();
    ZeroReport rep = trivial_zero_report(betas, f, args.opts());
    if (args.format == "json") {
        std::cout << zero_report_to_json(rep, *f).dump(2) << "\n";
    } else {
        std::cout << field_line(*f) << "\n";
        std::cout << "betas: " << betas.to_string() << "\n";
        std::cout << "phi: " << rep.phi << "\n";
        std::cout << "degree: " << rep.degree << "\n";
        std::cout << "predicted_zero: " << (rep.predicted_zero ? "yes" : "no") << "\n";
        std::cout << "multiplicity_at_one: " << rep.multiplicity << "\n";
        std::cout << "value_at_one: " << pretty(rep.value_at_one) << "\n";
        std::cout << "status: ok\n";
    }
    return 0;
}

int cmd_permute(const CommonArgs& args, const std::string& betas_text, const std::string& perms_text) {
    BetaTuple betas = parse_betas(betas_text);
    FieldPtr f = args.field();
    std::vector<DigitPerm> perms = parse_perms(perms_text, betas.s());
    InvarianceReport rep = degree_invariance_check(betas, perms, f, args.opts());
    if (args.format == "json") {
        std::cout << invariance_report_to_json(rep, perms, *f).dump(2) << "\n";
    } else {
        std::cout << field_line(*f) << "\n";
        std::cout << "betas: " << rep.betas.to_string() << "\n";
        std::cout << "images: " << rep.images.to_string() << "\n";
        std::cout << "phi_before: " << rep.phi_before << "\n";
        std::cout << "phi_after: " << rep.phi_after << "\n";
        std::cout << "mode: " << (rep.computed ? "computed" : "formula-level") << "\n";
        if (rep.computed) {
            std::cout << "degree_before: " << rep.degree_before << "\n";
            std::cout << "degree_after: " << rep.degree_after << "\n";
        }
        std::cout << "status: " << (rep.ok() ? "ok" : "VIOLATION") << "\n";
    }
    if (!rep.ok())
        throw TheoremViolation("degree invariance failed for " + rep.betas.to_string());
    return 0;
}

int cmd_sweep(const CommonArgs& args, std::uint32_t s_max, std::uint64_t beta_max) {
    FieldPtr f = args.field();
    ComputeOpts opts = args.opts();
    struct Row {
        BetaTuple betas;
        ZeroReport rep;
        std::string status = "ok";
    };
    std::vector<Row> rows;
    for (std::uint32_t s = 1; s <= s_max; ++s) {
        std::vector<std::uint64_t> tuple(s, 1);
        bool more = true;
        while (more) {
            Row row;
            row.betas = BetaTuple::of_u64(tuple);
            rows.push_back(row);
            more = false;
            for (std::size_t i = tuple.size(); i-- > 0;) {
                if (++tuple[i] <= beta_max) {
                    more = true;
                    break;
                }
                tuple[i] = 1;
            }
        }
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (!args.serial)
#endif
    for (std::int64_t i = 0; i < std::int64_t(rows.size()); ++i) {
        ComputeOpts o = opts;
        o.parallel = false;
        try {
            rows[std::size_t(i)].rep = trivial_zero_report(rows[std::size_t(i)].betas, f, o);
        } catch (const BudgetError&) {
            rows[std::size_t(i)].status = "budget";
        } catch (const TheoremViolation& e) {
            rows[std::size_t(i)].status = std::string("VIOLATION: ") + e.what();
        }
    }
    bool violation = false;
    if (args.format == "json") {
        Json arr = Json::array();
        for (auto& row : rows) {
            if (row.status == "ok") {
                Json j = zero_report_to_json(row.rep, *f);
                arr.push_back(std::move(j));
            } else {
                Json j;
                Json bl = Json::array();
                for (auto& b : row.betas.betas) bl.push_back(b.get_str());
                j["betas"] = bl;
                j["q"] = f->q;
                j["status"] = row.status;
                arr.push_back(std::move(j));
            }
            violation |= row.status.rfind("VIOLATION", 0) == 0;
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "betas,q,phi,degree,multiplicity_at_one,predicted_zero,status\n";
        for (auto& row : rows) {
            std::string bs;
            for (std::size_t i = 0; i < row.betas.betas.size(); ++i) {
                if (i) bs += "|";
                bs += row.betas.betas[i].get_str();
            }
            if (row.status == "ok") {
                std::cout << bs << "," << f->q << "," << row.rep.phi << "," << row.rep.degree << ","
                          << row.rep.multiplicity << "," << (row.rep.predicted_zero ? "yes" : "no")
                          << ",ok\n";
            } else {
                std::cout << bs << "," << f->q << ",,,,," << row.status << "\n";
                violation |= row.status.rfind("VIOLATION", 0) == 0;
            }
        }
    }
    if (violation) throw TheoremViolation("sweep encountered a theorem violation");
    return 0;
}

int cmd_dirichlet(const CommonArgs& args, std::uint32_t ext_degree, const std::string& lambdas_text,
                  const std::string& betas_text, const std::string& beta_text) {
    FieldPtr base = args.field();
    FieldPtr ext = field_create(base->p, base->e * ext_degree);
    DirichletSpec spec;
    spec.ext = ext;
    spec.exponents = parse_betas(betas_text);
    if (beta_text.find_first_not_of("0123456789") != std::string::npos || beta_text.empty())
        throw InvalidArgument("--beta expects a non-negative integer");
    spec.extra_beta = Nat(beta_text);
    // lambdas: ';'-separated coordinate vectors over F_p, low index first
    std::size_t i = 0;
    while (i <= lambdas_text.size() && !lambdas_text.empty()) {
        std::size_t j = lambdas_text.find(';', i);
        if (j == std::string::npos) j = lambdas_text.size();
        BetaTuple coords = parse_betas(lambdas_text.substr(i, j - i));
        std::vector<std::uint32_t> c;
        for (auto& x : coords.betas) c.push_back(std::uint32_t(x.get_ui()));
        if (c.size() != ext->e)
            throw InvalidArgument("each lambda needs " + std::to_string(ext->e) + " coordinates over F_p");
        spec.lambdas.push_back(ext->from_coords(c));
        if (j == lambdas_text.size()) break;
        i = j + 1;
    }
    if (spec.lambdas.size() != spec.exponents.s())
        throw InvalidArgument("need one lambda (';'-separated) per entry of --betas");

    DirichletResult res = dirichlet_specialize(spec, base, args.opts());
    if (args.format == "json") {
        Json j;
        j["field"] = field_to_json(*base);
        j["extension"] = field_to_json(*ext);
        Json ls = Json::array();
        for (auto c : spec.lambdas) ls.push_back(ext->coords(c));
        j["lambdas"] = ls;
        Json bl = Json::array();
        for (auto& b : spec.exponents.betas) bl.push_back(b.get_str());
        j["betas"] = bl;
        j["beta"] = spec.extra_beta.get_str();
        j["phi_unspecialized"] = res.phi_unspecialized;
        j["degree"] = res.poly.degree_in_t0();
        j["paths_agree"] = res.paths_agree;
        j["predicted_zero"] = res.predicted_zero;
        j["vanishes_at_one"] = res.vanishes_at_one;
        j["poly"] = poly_to_json(res.poly);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << field_line(*base) << "\n";
        std::cout << "extension: p=" << ext->p << " e=" << ext->e << " q=" << ext->q << "\n";
        std::cout << "betas: " << spec.exponents.to_string() << "\n";
        std::cout << "beta: " << spec.extra_beta.get_str() << "\n";
        std::cout << "phi_unspecialized: " << res.phi_unspecialized << "\n";
        std::cout << "degree: " << res.poly.degree_in_t0() << "\n";
        std::cout << "paths_agree: " << (res.paths_agree ? "yes" : "NO") << "\n";
        std::cout << "predicted_zero: " << (res.predicted_zero ? "yes" : "no") << "\n";
        std::cout << "vanishes_at_one: " << (res.vanishes_at_one ? "yes" : "no") << "\n";
        std::cout << "poly (t0, theta): " << pretty(res.poly) << "\n";
    }
    if (!res.paths_agree)
        throw TheoremViolation("dirichlet computation paths disagree");
    return 0;
}

int cmd_verify(CommonArgs& args, VerifyGrid& grid, const std::vector<std::uint32_t>& qs,
               const std::string& golden_dir) {
    if (!qs.empty()) grid.qs = qs;
    grid.opts = args.opts();
    if (!golden_dir.empty()) {
        grid.golden_dir = golden_dir;
        char buf[4096];
        ssize_t n = readlink("/proc/self/exe", buf, sizeof buf - 1);
        if (n > 0) {
            buf[n] = 0;
            grid.cli_path = buf;
        }
    }
    std::vector<CriterionResult> results = verify_all(grid, &std::cout);
    bool all_pass = true;
    for (auto& r : results)
        if (!r.pass) all_pass = false;
    std::cout << (all_pass ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    if (!all_pass) throw TheoremViolation("verification grid failed");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"special polynomials of zeta and L-series over F_q[theta]"};
    app.require_subcommand(1);

    CommonArgs compute_args, degree_args, zeros_args, permute_args, sweep_args, dirichlet_args, verify_args;
    std::string compute_betas, compute_method = "both";
    std::optional<std::uint32_t> compute_dmax;
    auto* compute = app.add_subcommand("compute", "compute z(betas, t0) by one or both routes");
    add_common(compute, compute_args);
    compute->add_option("--betas", compute_betas, "comma-separated exponents, e.g. 1,2")->required();
    compute->add_option("--method", compute_method, "direct, via_ones, or both")
        ->check(CLI::IsMember({"direct", "via_ones", "both"}));
    compute->add_option("--d-max", compute_dmax, "truncate the series at this t0 degree");

    std::string degree_betas;
    auto* degree = app.add_subcommand("degree", "degree formula and computed degree");
    add_common(degree, degree_args);
    degree->add_option("--betas", degree_betas)->required();

    std::string zeros_betas;
    auto* zeros = app.add_subcommand("zeros", "trivial zero report at t0 = 1");
    add_common(zeros, zeros_args);
    zeros->add_option("--betas", zeros_betas)->required();

    std::string permute_betas, permute_perms;
    auto* permute = app.add_subcommand("permute", "apply digit permutations and compare degrees");
    add_common(permute, permute_args);
    permute->add_option("--betas", permute_betas)->required();
    permute->add_option("--perms", permute_perms, "digit permutations, e.g. 0:1,1:0;2:3,3:2")->required();

    std::uint32_t sweep_smax = 2;
    std::uint64_t sweep_bmax = 3;
    auto* sweep = app.add_subcommand("sweep", "zero reports over a grid of exponent tuples");
    add_common(sweep, sweep_args);
    sweep->add_option("--s-max", sweep_smax, "largest tuple length");
    sweep->add_option("--beta-max", sweep_bmax, "largest exponent per coordinate");

    std::uint32_t diri_ext = 1;
    std::string diri_lambdas, diri_betas, diri_beta = "0";
    auto* diri = app.add_subcommand("dirichlet", "special polynomial of an evaluation character");
    add_common(diri, dirichlet_args);
    diri->add_option("--ext-degree", diri_ext, "extension degree m: lambdas live in F_(q^m)")->required();
    diri->add_option("--lambdas", diri_lambdas, "';'-separated coordinate vectors over F_p");
    diri->add_option("--betas", diri_betas, "character exponents");
    diri->add_option("--beta", diri_beta, "exponent of a itself (theta stays a variable)")->required();

    VerifyGrid grid;
    std::vector<std::uint32_t> verify_qs;
    std::string verify_golden;
    auto* verify = app.add_subcommand("verify", "run the theorem property grid; nonzero exit on violation");
    add_common(verify, verify_args, false);
    verify->add_option("--q", verify_qs, "field sizes to verify (default 2,3,4,5)");
    verify->add_option("--s-max", grid.s_max, "largest tuple length");
    verify->add_option("--beta-max", grid.beta_max, "largest exponent per coordinate");
    verify->add_option("--ones-s-max", grid.ones_s_max, "largest all-ones length for the degree check");
    verify->add_option("--sheats-max", grid.sheats_beta_max, "largest one-variable exponent");
    verify->add_option("--cases", grid.invariance_cases, "randomized invariance cases per q");
    verify->add_option("--digit-positions", grid.digit_positions, "digit permutation support size");
    verify->add_option("--perm-samples", grid.digit_perm_samples, "sampled permutations per q");
    verify->add_option("--digit-qs", grid.digit_qs, "field sizes for the digit lemma grids");
    verify->add_option("--dirichlet-qs", grid.dirichlet_qs, "field sizes for the dirichlet grid");
    verify->add_option("--dirichlet-beta-max", grid.dirichlet_beta_max, "largest dirichlet beta");
    verify->add_option("--seed", grid.seed, "seed for the randomized checks");
    verify->add_option("--golden-dir", verify_golden, "golden directory to include the CLI determinism check");

    try {
        app.parse(argc, argv);
        if (compute->parsed()) return cmd_compute(compute_args, compute_betas, compute_method, compute_dmax);
        if (degree->parsed()) return cmd_degree(degree_args, degree_betas);
        if (zeros->parsed()) return cmd_zeros(zeros_args, zeros_betas);
        if (permute->parsed()) return cmd_permute(permute_args, permute_betas, permute_perms);
        if (sweep->parsed()) return cmd_sweep(sweep_args, sweep_smax, sweep_bmax);
        if (diri->parsed()) return cmd_dirichlet(dirichlet_args, diri_ext, diri_lambdas, diri_betas, diri_beta);
        if (verify->parsed()) return cmd_verify(verify_args, grid, verify_qs, verify_golden);
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        std::cerr << "usage error; try --help (e.g. fqzeta compute --p 3 --betas 1,1)\n";
        return 1;
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fqzeta/special.hpp"

namespace fqzeta {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0; // out of budget, excluded by the criterion itself
    std::string detail;        // first failure, or empty
};

/// Grid sizes for the verification run. The defaults are the acceptance
/// grids; the CLI can scale them down for quick checks.
struct VerifyGrid {
    std::vector<std::uint32_t> qs = {2, 3, 4, 5};
    std::uint32_t s_max = 4;
    std::uint64_t beta_max = 6;
    std::uint32_t ones_s_max = 12;
    std::vector<std::uint32_t> digit_qs = {2, 3, 4, 5, 8, 9};
    std::uint64_t sheats_beta_max = 200;
    std::uint32_t digit_positions = 8; // permutations act on 0..positions-1
    std::uint32_t digit_perm_samples = 40;
    std::uint64_t digit_k_bound = 0;   // 0 = q^5
    std::uint32_t invariance_cases = 1000;
    std::vector<std::uint32_t> dirichlet_qs = {3, 4, 5};
    std::uint32_t dirichlet_m_max = 2;
    std::uint32_t dirichlet_s_max = 2;
    std::uint64_t dirichlet_beta_max = 4;
    std::uint64_t dirichlet_exp_max = 2;
    std::uint64_t frobenius_i_factor = 2; // check i = 0..factor*e
    std::uint64_t budget_q_power = 10'000'000; // the q^(phi+2) filter
    std::uint64_t seed = 0x5eed5eedULL;
    ComputeOpts opts;

    /// Paths for the CLI determinism criterion; empty = skip it.
    std::string cli_path;
    std::string golden_dir;
};

FieldPtr field_for_q(std::uint32_t q);

/// Run every criterion; prints one progress line per criterion to `progress`
/// when given. Results come back in criterion order 1..11.
std::vector<CriterionResult> verify_all(const VerifyGrid& grid, std::ostream* progress = nullptr);

// Individual runners (criterion numbers refer to the acceptance list).
std::vector<CriterionResult> verify_grid_pass(const VerifyGrid& grid); // 1,2,3,7,8,9
CriterionResult verify_sheats(const VerifyGrid& grid);                 // 4
CriterionResult verify_digit_lemmas(const VerifyGrid& grid);           // 5
CriterionResult verify_invariance(const VerifyGrid& grid);             // 6
CriterionResult verify_dirichlet(const VerifyGrid& grid);              // 10
CriterionResult verify_cli_golden(const VerifyGrid& grid);             // 11

/// Golden-file table shared with the CLI test: name, argument string,
/// expected exit code.
struct GoldenCase {
    std::string name;
    std::string args;
    int exit_code;
};
const std::vector<GoldenCase>& golden_cases();

/// Run a command, capturing stdout+stderr combined; returns exit code.
int run_command_capture(const std::string& command, std::string& output);

} // namespace fqzeta

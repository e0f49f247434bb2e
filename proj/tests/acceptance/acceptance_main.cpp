// Acceptance suite: runs every criterion of the verification grid at full
// size and prints one pass/fail line per criterion. Exit code 0 iff all
// criteria pass.

#include <cstdio>
#include <iostream>

#include "fqzeta/verify.hpp"

int main() {
    fqzeta::VerifyGrid grid;
    grid.cli_path = FQZETA_CLI_PATH;
    grid.golden_dir = FQZETA_GOLDEN_DIR;

    std::vector<fqzeta::CriterionResult> results = fqzeta::verify_all(grid, nullptr);
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%s criterion %2s: %s (%llu checks, %llu skipped)\n", r.pass ? "PASS" : "FAIL",
                    r.id.c_str(), r.name.c_str(), (unsigned long long)r.checked,
                    (unsigned long long)r.skipped);
        if (!r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
        if (!r.pass) all_pass = false;
    }
    std::printf("%s\n", all_pass ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
    return all_pass ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fqzeta/verify.hpp"

using namespace fqzeta;

namespace {

const char* cli() { return FQZETA_CLI_PATH; }

int run(const std::string& args, std::string& out) {
    return run_command_capture(std::string(cli()) + " " + args, out);
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(FQZETA_GOLDEN_DIR) + "/" + name + ".txt", std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("exit codes") {
    std::string out;
    CHECK(run("compute --p 3 --betas 1,1", out) == 0);
    CHECK(run("compute --p 3", out) == 1);               // missing --betas
    CHECK(run("compute --p 4 --betas 1", out) == 1);     // 4 is not prime
    CHECK(run("compute --p 2 --betas 1 --d-max 30", out) == 2);
    CHECK(out.find("d = 24") != std::string::npos);      // names the failing degree
    CHECK(run("nonsense", out) == 1);
}

TEST_CASE("spec example: both methods print the same polynomial") {
    std::string out;
    CHECK(run("compute --p 3 --betas 1,1 --method both", out) == 0);
    CHECK(out.find("z[direct]: 1 + 2*t0\n") != std::string::npos);
    CHECK(out.find("z[via_ones]: 1 + 2*t0\n") != std::string::npos);
    CHECK(out.find("equal: yes") != std::string::npos);
}

TEST_CASE("degree subcommand values") {
    std::string out;
    CHECK(run("degree --p 3 --betas 5", out) == 0);
    CHECK(out.find("phi: 1\n") != std::string::npos);
    CHECK(out.find("computed_degree: 1\n") != std::string::npos);
}

TEST_CASE("identical invocations are byte-identical") {
    for (const GoldenCase& c : golden_cases()) {
        std::string a, b;
        int ca = run(c.args, a);
        int cb = run(c.args, b);
        CHECK(ca == c.exit_code);
        CHECK(cb == c.exit_code);
        CHECK(a == b);
    }
}

TEST_CASE("golden files match") {
    for (const GoldenCase& c : golden_cases()) {
        std::string out;
        int code = run(c.args, out);
        CHECK(code == c.exit_code);
        INFO("case ", c.name);
        CHECK(out == golden(c.name));
    }
}

TEST_CASE("cache hits are bit-identical to recomputation") {
    std::string dir = "/tmp/fqzeta_cli_cache_test";
    std::filesystem::remove_all(dir);
    std::string cold, warm, nocache;
    CHECK(run("compute --p 3 --betas 2,2 --method direct", nocache) == 0);
    std::string cmd = "compute --p 3 --betas 2,2 --method direct --cache-dir " + dir;
    CHECK(run(cmd, cold) == 0);
    CHECK(run(cmd, warm) == 0);
    CHECK(cold == warm);
    CHECK(cold == nocache);
    std::filesystem::remove_all(dir);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_all(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout.txt";
    const std::string err_path = "cli_stderr.txt";
    const std::string command =
        std::string(BELLBOX_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_all(out_path);
    result.err = read_all(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("membership exit codes track the verdict") {
    const auto feasible = run_cli("membership --box P1:4 --set q2 --restarts 32");
    CHECK(feasible.exit_code == 0);
    CHECK(contains(feasible.out, "\"verdict\": \"feasible\""));
    CHECK(contains(feasible.out, "\"type\": \"qubit\""));

    const auto infeasible = run_cli("membership --box PTB --set local");
    CHECK(infeasible.exit_code == 1);
    CHECK(contains(infeasible.out, "\"verdict\": \"infeasible\""));
    CHECK(contains(infeasible.out, "witness"));
}

TEST_CASE("membership accepts mixture expressions and pvm restriction") {
    // The P1-P3 edge midpoint needs a zero-weight effect, which projective
    // measurements cannot supply.
    const auto pvm =
        run_cli("membership --box 0.5*P1+0.5*P3 --set q2 --pvm-only --restarts 64");
    CHECK(pvm.exit_code == 1);
    CHECK(contains(pvm.out, "projective only"));

    const auto full = run_cli("membership --box 0.5*P1+0.5*P3 --set q2 --restarts 64");
    CHECK(full.exit_code == 0);
}

TEST_CASE("usage and parse failures exit above the verdict range") {
    CHECK(run_cli("membership --box P1:4").exit_code == 3);       // missing --set
    CHECK(run_cli("membership --box nosuchfile.json --set q2").exit_code == 3);
    CHECK(run_cli("membership --box P1:4 --set l:0").exit_code == 3);
    CHECK(run_cli("membership --box 0.9*P1+0.2*P2 --set q2").exit_code == 3);
    CHECK(run_cli("").exit_code == 3);                            // no subcommand
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("bounds prints the counting table") {
    const auto result = run_cli("bounds 2 3 2");
    CHECK(result.exit_code == 0);
    CHECK(contains(result.out, "scenario (2,3,2)"));
    CHECK(contains(result.out, "statistical dimension    15"));
    CHECK(contains(result.out, "cardinality lower bound  7"));
    CHECK(contains(result.out, "cardinality upper bound  8"));
    CHECK(contains(result.out, "n/a (needs m = 2, v = 2)"));
    CHECK(contains(result.out, "d=3: 9"));
}

TEST_CASE("scan writes a table and reports the reference error") {
    const auto result = run_cli(
        "scan --triangle P0,P1,PTB --set local --slices 3 --out cli_scan.csv");
    CHECK(result.exit_code == 0);
    CHECK(contains(result.out, "wrote cli_scan.csv"));
    CHECK(contains(result.out, "max abs_error"));

    const std::string csv = read_all("cli_scan.csv");
    CHECK(contains(csv, "slice,critical,analytic,abs_error,verdict"));
    CHECK(contains(csv, "degenerate"));
    std::remove("cli_scan.csv");
}

TEST_CASE("export re-renders a saved scan table") {
    auto scan = run_cli(
        "scan --triangle P0,P1,PTB --set local --slices 3 --format json "
        "--out cli_scan.json");
    REQUIRE(scan.exit_code == 0);

    const auto exported =
        run_cli("export --table cli_scan.json --out cli_export.csv");
    CHECK(exported.exit_code == 0);
    const std::string csv = read_all("cli_export.csv");
    CHECK(contains(csv, "slice,critical,analytic,abs_error,verdict"));
    CHECK(contains(csv, "bracketed"));

    CHECK(run_cli("export --table cli_scan.json --format json --out cli_export2.json")
              .exit_code == 0);
    CHECK(contains(read_all("cli_export2.json"), "\"vertices\""));

    std::remove("cli_scan.json");
    std::remove("cli_export.csv");
    std::remove("cli_export2.json");
}

TEST_CASE("config file values apply and flags override them") {
    {
        std::ofstream cfg("cli_cfg.json");
        cfg << "{\"restarts\": 16, \"seed\": 7}";
    }
    const auto from_config =
        run_cli("--config cli_cfg.json membership --box PTB --set q2");
    CHECK(from_config.exit_code == 0);
    CHECK(contains(from_config.out, "\"restarts_used\": 16"));

    const auto overridden =
        run_cli("--config cli_cfg.json --restarts 8 membership --box PTB --set q2");
    CHECK(contains(overridden.out, "\"restarts_used\": 8"));
    std::remove("cli_cfg.json");
}

TEST_CASE("verify runs selected claims and writes a report") {
    const auto result = run_cli(
        "verify --only formulas-ns-dimension --only formulas-caratheodory-q "
        "--out cli_verify.json");
    CHECK(result.exit_code == 0);
    CHECK(contains(result.out, "[pass] formulas-ns-dimension"));
    CHECK(contains(result.out, "all assertive claims passed"));
    CHECK(contains(read_all("cli_verify.json"), "\"all_passed\": true"));
    std::remove("cli_verify.json");

    CHECK(run_cli("verify --only no-such-claim").exit_code == 3);
}

TEST_CASE("identical invocations produce identical output") {
    const std::string args = "membership --box PTB --set q2 --restarts 8";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.out == second.out);
}

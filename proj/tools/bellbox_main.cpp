#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellbox/counting.hpp"
#include "bellbox/json_io.hpp"
#include "bellbox/scan.hpp"
#include "bellbox/solver.hpp"
#include "bellbox/verify.hpp"

namespace {

using bellbox::SolverConfig;

// Deterministic output names: reruns of the same invocation overwrite their
// own files.
std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string command_hash_hex(const std::string& command_line) {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, fnv1a(command_line));
    return buffer;
}

struct CliState {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    std::optional<int> threads;
    std::optional<double> feasibility_tol;
    std::optional<double> infeasibility_tol;
    std::optional<std::string> output_dir;
    std::optional<std::string> format;
    bool pvm_only = false;
};

struct ResolvedConfig {
    SolverConfig solver;
    std::string output_dir = ".";
    std::string format = "csv";
    bool restarts_explicit = false;
};

// Defaults, overridden by the JSON config file, overridden by flags.
ResolvedConfig resolve(const CliState& state) {
    ResolvedConfig r;
    if (state.config_path) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(bellbox::read_text_file(*state.config_path));
        } catch (const nlohmann::json::parse_error& e) {
            throw bellbox::ParseError(e.what(), static_cast<int>(e.byte));
        }
        if (j.contains("seed")) r.solver.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("restarts")) {
            r.solver.restarts = j.at("restarts").get<int>();
            r.restarts_explicit = true;
        }
        if (j.contains("threads")) r.solver.threads = j.at("threads").get<int>();
        if (j.contains("feasibility_tol")) {
            r.solver.feasibility_tol = j.at("feasibility_tol").get<double>();
        }
        if (j.contains("infeasibility_tol")) {
            r.solver.infeasibility_tol = j.at("infeasibility_tol").get<double>();
        }
        if (j.contains("output_dir")) r.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("format")) r.format = j.at("format").get<std::string>();
    }
    if (state.seed) r.solver.seed = *state.seed;
    if (state.restarts) {
        r.solver.restarts = *state.restarts;
        r.restarts_explicit = true;
    }
    if (state.threads) r.solver.threads = *state.threads;
    if (state.feasibility_tol) r.solver.feasibility_tol = *state.feasibility_tol;
    if (state.infeasibility_tol) r.solver.infeasibility_tol = *state.infeasibility_tol;
    if (state.output_dir) r.output_dir = *state.output_dir;
    if (state.format) r.format = *state.format;
    r.solver.pvm_only = state.pvm_only;
    return r;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find(sep, start);
        parts.push_back(text.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return parts;
}

int run_membership(const std::string& box_spec, const std::string& set_spec,
                   const ResolvedConfig& config) {
    const auto box = bellbox::parse_box_spec(box_spec);
    const auto set = bellbox::parse_set_descriptor(set_spec);
    const auto result = bellbox::decide_membership(box, set, config.solver);
    std::cout << bellbox::membership_to_json(result) << "\n";
    switch (result.verdict) {
        case bellbox::Verdict::Feasible: return 0;
        case bellbox::Verdict::Infeasible: return 1;
        case bellbox::Verdict::Inconclusive: return 2;
    }
    return 3;
}

int run_scan(const std::string& triangle_spec, const std::string& set_spec, int slices,
             const ResolvedConfig& config, const std::optional<std::string>& out,
             const std::string& command_line) {
    const auto parts = split(triangle_spec, ',');
    if (parts.size() != 3) {
        throw bellbox::ParseError("--triangle needs three comma-separated box specs", 1);
    }
    const auto v1 = bellbox::parse_box_spec(parts[0]);
    const auto v2 = bellbox::parse_box_spec(parts[1]);
    const auto v3 = bellbox::parse_box_spec(parts[2]);
    const auto set = bellbox::parse_set_descriptor(set_spec);

    bellbox::ScanOptions options;
    options.n_slices = slices;
    // Sets settled by the exact program afford an exact bracket.
    const bool exact = set.kind == bellbox::SetDescriptor::Kind::Local ||
                       (set.kind == bellbox::SetDescriptor::Kind::LimitedLocal &&
                        set.cardinality >=
                            bellbox::lambda_star_bounds(v1.scenario()).upper);
    options.bisection_tol = exact ? 1e-9 : 5e-3;

    const auto table = bellbox::scan_triangle(v1, v2, v3, set, config.solver, options);
    const auto format = bellbox::export_format_from_string(config.format);
    const std::string path =
        out ? *out
            : config.output_dir + "/scan-" + command_hash_hex(command_line) + "." + config.format;
    bellbox::export_scan(table, format, path);

    bool any_reference = false;
    for (const auto& row : table.rows) any_reference = any_reference || row.analytic.has_value();
    std::cout << "wrote " << path << "\n";
    if (any_reference) {
        std::cout << "max abs_error " << bellbox::max_abs_error(table) << "\n";
    } else {
        std::cout << "max abs_error n/a (no reference curve for this triangle)\n";
    }
    return 0;
}

int run_bounds(int n, int m, int v) {
    const bellbox::BellScenario sc(n, m, v);
    const auto stars = bellbox::lambda_star_bounds(sc);
    std::cout << "scenario " << sc.to_string() << "\n";
    std::cout << "  statistical dimension    " << bellbox::ns_dimension(sc)
              << "   = (m(v-1)+1)^n - 1\n";
    std::cout << "  cardinality lower bound  " << stars.lower
              << "   response-function counting\n";
    std::cout << "  cardinality upper bound  " << stars.upper
              << "   = min(v^(m(n-1)), (m(v-1)+1)^n - 1)\n";
    std::cout << "  quantum mixing bound     " << bellbox::caratheodory_quantum(sc) << "\n";
    if (const auto masanes = bellbox::masanes_dimension(sc)) {
        std::cout << "  convexity dimension      " << *masanes << "   = 2(3^n - 1)\n";
    } else {
        std::cout << "  convexity dimension      n/a (needs m = 2, v = 2)\n";
    }
    std::cout << "  separable cardinality    ";
    for (const int d : {2, 3, 4}) {
        std::cout << "d=" << d << ": " << bellbox::separable_lambda_bound(d, n) << "  ";
    }
    std::cout << "= d^n\n";
    return 0;
}

int run_verify(const std::vector<std::string>& only, const ResolvedConfig& config,
               const std::optional<std::string>& out, const std::string& command_line) {
    const auto report = bellbox::verify_claims(config.solver, only);
    const std::string path =
        out ? *out
            : config.output_dir + "/verify-" + command_hash_hex(command_line) + ".json";
    bellbox::write_text_file(path, bellbox::report_to_json(report));

    for (const auto& claim : report.claims) {
        std::ostringstream line;
        line.precision(6);
        line << "[" << claim.status << "] " << claim.id << ": measured " << claim.measured
             << ", expected " << claim.expected;
        if (claim.tolerance > 0) line << " +/- " << claim.tolerance;
        std::cout << line.str() << "\n";
    }
    std::cout << "wrote " << path << "\n";
    std::cout << (report.all_passed() ? "all assertive claims passed"
                                      : "assertive claim failures present")
              << "\n";
    return report.all_passed() ? 0 : 1;
}

int run_export(const std::string& table_path, const ResolvedConfig& config,
               const std::optional<std::string>& out, const std::string& command_line) {
    const auto table = bellbox::scan_table_from_json(bellbox::read_text_file(table_path));
    const auto format = bellbox::export_format_from_string(config.format);
    const std::string path =
        out ? *out
            : config.output_dir + "/export-" + command_hash_hex(command_line) + "." +
                  config.format;
    bellbox::export_scan(table, format, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"membership and boundary mapping for dimension-limited correlation sets"};
    app.fallthrough();
    app.require_subcommand(1);

    CliState state;
    app.add_option("--config", state.config_path, "JSON config file (flags win over it)");
    app.add_option("--seed", state.seed, "base seed for all random draws");
    app.add_option("--restarts", state.restarts,
                   "search restarts per query (default 64; verify defaults to 256)");
    app.add_option("--threads", state.threads, "solver threads; 0 = all, 1 = serial");
    app.add_option("--feasibility-tol", state.feasibility_tol,
                   "distance at or below which a verdict is feasible");
    app.add_option("--infeasibility-tol", state.infeasibility_tol,
                   "distance above which a verdict is (heuristically) infeasible");
    app.add_option("--output-dir", state.output_dir, "directory for generated files");
    app.add_option("--format", state.format, "output format: csv or json");
    app.add_flag("--pvm-only", state.pvm_only, "restrict searches to projective measurements");

    auto* membership = app.add_subcommand("membership", "decide whether a box is in a set");
    std::string box_spec, set_spec;
    membership->add_option("--box", box_spec,
                           "canonical name, mixture like \"0.5*P1+0.5*P3\", or JSON file")
        ->required();
    membership->add_option("--set", set_spec, "q2 | local | l:<k> | hybrid:<d>:<k>")
        ->required();

    auto* scan = app.add_subcommand("scan", "bracket a set boundary over a box triangle");
    std::string triangle_spec, scan_set_spec;
    int slices = 21;
    std::optional<std::string> scan_out;
    scan->add_option("--triangle", triangle_spec, "three box specs, comma separated")
        ->required();
    scan->add_option("--set", scan_set_spec, "q2 | local | l:<k> | hybrid:<d>:<k>")
        ->required();
    scan->add_option("--slices", slices, "number of held-weight slices (default 21)");
    scan->add_option("--out", scan_out, "output path (default: hash-named file)");

    auto* bounds = app.add_subcommand("bounds", "print cardinality and dimension bounds");
    int bn = 2, bm = 2, bv = 2;
    bounds->add_option("parties", bn, "number of parties")->required();
    bounds->add_option("inputs", bm, "inputs per party")->required();
    bounds->add_option("outputs", bv, "outputs per input")->required();

    auto* verify = app.add_subcommand("verify", "run the claim verification suite");
    std::vector<std::string> only;
    std::optional<std::string> verify_out;
    verify->add_option("--only", only, "run only the named claim ids");
    verify->add_option("--out", verify_out, "report path (default: hash-named file)");

    auto* export_cmd = app.add_subcommand("export", "re-export a saved scan table");
    std::string table_path;
    std::optional<std::string> export_out;
    export_cmd->add_option("--table", table_path, "scan table JSON file")->required();
    export_cmd->add_option("--out", export_out, "output path (default: hash-named file)");

    std::string command_line;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) command_line += ' ';
        command_line += argv[i];
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        auto config = resolve(state);
        if (membership->parsed()) return run_membership(box_spec, set_spec, config);
        if (scan->parsed()) {
            return run_scan(triangle_spec, scan_set_spec, slices, config, scan_out,
                            command_line);
        }
        if (bounds->parsed()) return run_bounds(bn, bm, bv);
        if (verify->parsed()) {
            if (!config.restarts_explicit) config.solver.restarts = 256;
            config.format = "json";
            return run_verify(only, config, verify_out, command_line);
        }
        if (export_cmd->parsed()) {
            return run_export(table_path, config, export_out, command_line);
        }
    } catch (const bellbox::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

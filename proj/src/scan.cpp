#include "bellbox/scan.hpp"

#include <cmath>
#include <sstream>

namespace bellbox {

namespace {

// Names a vertex by its canonical-box match so reference curves can be
// attached; numerically coincident labels resolve to the first match.
std::string name_of(const ProbBox& box) {
    if (!box.scenario().is_chsh()) return "custom";
    const auto coords = correlators_from_probs(box);
    for (const BoxLabel label :
         {BoxLabel::P0, BoxLabel::P1, BoxLabel::P2, BoxLabel::P3, BoxLabel::P4, BoxLabel::P34,
          BoxLabel::P14, BoxLabel::PTB, BoxLabel::Scarani}) {
        const auto ref = canonical_box(label);
        bool match = true;
        for (int i = 0; i < 4 && match; ++i) {
            match = std::abs(coords.marginals[i] - ref.marginals[i]) < 1e-9 &&
                    std::abs(coords.correlators[i] - ref.correlators[i]) < 1e-9;
        }
        if (match) return to_string(label);
    }
    return "custom";
}

using Curve = std::function<double(double)>;

std::optional<Curve> reference_curve(const std::array<std::string, 3>& names,
                                     const SetDescriptor& set, bool pvm_only) {
    if (names[0] != "P0" || names[1] != "P1") return std::nullopt;
    const bool q2 = set.kind == SetDescriptor::Kind::Q2;
    if (names[2] == "P3:4" && q2 && !pvm_only) {
        return Curve([](double c1) { return std::pow(1.0 - c1, 1.5); });
    }
    if (names[2] == "PTB") {
        if (set.kind == SetDescriptor::Kind::Local) {
            return Curve([](double c1) { return (1.0 - c1) / std::sqrt(2.0); });
        }
        if (q2 && pvm_only) {
            return Curve([](double c1) { return std::pow(1.0 - c1, 1.5); });
        }
        if (q2) {
            return Curve([](double c1) { return std::pow(1.0 - c1, 1.25); });
        }
    }
    return std::nullopt;
}

}  // namespace

ScanTable scan_triangle(const ProbBox& v1, const ProbBox& v2, const ProbBox& v3,
                        const SetDescriptor& set, const SolverConfig& config,
                        const ScanOptions& options) {
    if (options.n_slices < 2) {
        throw InvalidModel("a scan needs at least 2 slices, got " +
                           std::to_string(options.n_slices));
    }
    ScanTable table;
    table.vertices = {name_of(v1), name_of(v2), name_of(v3)};
    const bool quantum_kind =
        set.kind == SetDescriptor::Kind::Q2 || set.kind == SetDescriptor::Kind::Hybrid;
    table.set = to_string(set) + (config.pvm_only && quantum_kind ? " (projective only)" : "");

    SolverConfig probe_config = config;
    probe_config.early_stop = true;  // slices consume verdicts only
    const auto reference = reference_curve(table.vertices, set, config.pvm_only);

    for (int i = 0; i < options.n_slices; ++i) {
        const double c1 = static_cast<double>(i) / (options.n_slices - 1);
        ScanRow row;
        row.slice = c1;
        if (reference) row.analytic = (*reference)(c1);

        if (1.0 - c1 < 1e-12) {
            // The ray collapses onto v2; there is no third-vertex weight to
            // push.
            row.verdict = "degenerate";
        } else {
            const ProbBox anchor = mix_boxes({v1, v2}, {1.0 - c1, c1});
            const ProbBox direction = mix_boxes({v2, v3}, {c1, 1.0 - c1});
            const std::function<bool(double)> feasible_at = [&](double c) {
                const ProbBox probe = mix_boxes({anchor, direction}, {1.0 - c, c});
                return decide_membership(probe, set, probe_config).verdict == Verdict::Feasible;
            };
            const auto bracket = critical_weight(feasible_at, options.bisection_tol);
            row.verdict = bracket.verdict;
            row.evaluations = bracket.evaluations;
            // Along the ray the v3 weight is the ray coordinate scaled by
            // the leftover (1 - c1).
            row.critical =
                bracket.verdict == "anchor-not-found" ? 0.0 : bracket.critical * (1.0 - c1);
            // Bisection only sees the endpoints it visits; a hollow set can
            // be feasible at both ends of the ray and not between. Re-test
            // interior points against the bracket for both conclusive
            // verdicts.
            if ((bracket.verdict == "bracketed" || bracket.verdict == "all-feasible") &&
                options.monotonicity_points > 0) {
                for (int j = 1; j <= options.monotonicity_points; ++j) {
                    const double c =
                        static_cast<double>(j) / (options.monotonicity_points + 1);
                    if (std::abs(c - bracket.critical) <= options.bisection_tol) continue;
                    ++row.evaluations;
                    if (feasible_at(c) != (c < bracket.critical)) {
                        row.verdict = "nonmonotone";
                        break;
                    }
                }
            }
        }
        if (row.analytic) row.abs_error = std::abs(row.critical - *row.analytic);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string scan_to_csv(const ScanTable& table) {
    std::ostringstream os;
    os.precision(17);
    os << "slice,critical,analytic,abs_error,verdict\n";
    for (const auto& row : table.rows) {
        os << row.slice << ',' << row.critical << ',';
        if (row.analytic) os << *row.analytic;
        os << ',';
        if (row.abs_error) os << *row.abs_error;
        os << ',' << row.verdict << '\n';
    }
    return os.str();
}

double max_abs_error(const ScanTable& table) {
    double worst = 0.0;
    for (const auto& row : table.rows) {
        if (row.abs_error) worst = std::max(worst, *row.abs_error);
    }
    return worst;
}

}  // namespace bellbox

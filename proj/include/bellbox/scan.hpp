#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bellbox/solver.hpp"

namespace bellbox {

// One slice of a triangle scan: the second vertex held at weight `slice`,
// the third vertex weight pushed until membership fails.
struct ScanRow {
    double slice = 0.0;
    // Critical third-vertex weight; for a "bracketed" row the box is a
    // member just below and a nonmember just above, within the bisection
    // tolerance scaled by (1 - slice).
    double critical = 0.0;
    std::optional<double> analytic;
    std::optional<double> abs_error;
    // bracketed | all-feasible | degenerate | nonmonotone | anchor-not-found
    std::string verdict;
    int evaluations = 0;
};

struct ScanTable {
    std::array<std::string, 3> vertices;  // canonical names, or "custom"
    std::string set;
    std::vector<ScanRow> rows;  // sorted by slice
};

struct ScanOptions {
    int n_slices = 21;
    // Bisection tolerance on the ray coordinate in [0, 1].
    double bisection_tol = 5e-3;
    // Extra feasibility probes per bracketed ray; a probe disagreeing with
    // the bracket demotes the row to "nonmonotone". 0 disables.
    int monotonicity_points = 8;
};

// For each slice weight c1, walks the ray from mix(v1, v2; 1-c1, c1) toward
// v3 holding the v2 weight fixed, and brackets the largest feasible v3
// weight. Known boundary triangles get their closed-form reference curve
// attached. Slices run sequentially; the membership solver parallelizes
// internally.
ScanTable scan_triangle(const ProbBox& v1, const ProbBox& v2, const ProbBox& v3,
                        const SetDescriptor& set, const SolverConfig& config,
                        const ScanOptions& options = {});

// Header "slice,critical,analytic,abs_error,verdict"; empty fields where no
// reference curve applies.
std::string scan_to_csv(const ScanTable& table);

double max_abs_error(const ScanTable& table);

}  // namespace bellbox

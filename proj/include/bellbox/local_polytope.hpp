#pragma once

#include <optional>
#include <vector>

#include "bellbox/lhv.hpp"
#include "bellbox/scenario.hpp"

namespace bellbox {

// Exact local-polytope membership by linear programming over the
// deterministic-strategy vertices, in free-parameter coordinates (the
// polytope is full dimensional there, so the equality system is well
// posed).
struct LocalMembership {
    bool is_local = false;

    // Filled when local: weights aligned with the vertex enumeration order.
    std::vector<double> weights;

    // Filled when nonlocal: a separating functional y on free-parameter
    // space with y.box > max_vertex y.vertex. Both sides are recomputed by
    // direct inner products after the solve, so the certificate does not
    // depend on solver internals.
    std::vector<double> witness;
    double witness_value = 0.0;
    double witness_threshold = 0.0;
};

LocalMembership local_membership_lp(const ProbBox& box, double tol = 1e-9);

// Euclidean distance (free-parameter coordinates) from the box to the local
// polytope, by Frank-Wolfe with away steps over the explicit vertex set.
// Zero for local boxes up to solver tolerance.
double local_distance(const ProbBox& box, int max_iterations = 2000);

// A decomposition over few vertices: greedy support shrinking on top of the
// membership LP, with an exhaustive search over small supports as fallback.
// Empty when the box has no decomposition with at most max_support terms.
struct SparseDecomposition {
    std::vector<int> vertex_indices;
    std::vector<double> weights;
};

std::optional<SparseDecomposition> sparse_local_decomposition(const ProbBox& box,
                                                              int max_support,
                                                              double tol = 1e-9);

// Convenience: the LHV model induced by a decomposition over vertices.
LHVModel decomposition_model(const SparseDecomposition& decomposition,
                             const BellScenario& scenario);

// Compresses a vertex decomposition to at most outputs^(inputs*(parties-1))
// hidden values by grouping on the response functions of parties 1..n-1 and
// letting party 0 respond stochastically within each group. This attains
// the worst-case shared-randomness cardinality, so it exists for every
// local box; empty for nonlocal boxes.
std::optional<LHVModel> local_product_model(const ProbBox& box, double tol = 1e-9);

}  // namespace bellbox

#pragma once

#include <cstdint>
#include <vector>

#include "bellbox/scenario.hpp"

namespace bellbox {

// A local deterministic strategy: outputs[party][input] is the fixed output
// each party announces.
struct DeterministicStrategy {
    std::vector<std::vector<int>> outputs;

    bool operator==(const DeterministicStrategy&) const = default;
};

ProbBox strategy_box(const DeterministicStrategy& strategy, const BellScenario& scenario);

// A local hidden-variable model with explicit shared-randomness cardinality:
// the hidden value lambda occurs with probability weights[lambda] and party
// p then samples its output from responses[lambda][p][input]. Private local
// randomness is free, so the per-party responses may be stochastic.
struct LHVModel {
    std::vector<double> weights;
    // responses[lambda][party][input][output]
    std::vector<std::vector<std::vector<std::vector<double>>>> responses;

    std::size_t cardinality() const { return weights.size(); }

    static LHVModel from_deterministic(const std::vector<double>& weights,
                                       const std::vector<DeterministicStrategy>& strategies,
                                       const BellScenario& scenario);
};

void validate(const LHVModel& model, const BellScenario& scenario, double tol = kBoxTolerance);

ProbBox lhv_box(const LHVModel& model, const BellScenario& scenario);

// All v^(m n) deterministic strategies of the scenario together with their
// boxes; these are exactly the vertices of the local polytope. Duplicate
// boxes (possible only through the 1e-12 quantization used for comparison)
// are removed. Throws TooLarge beyond `cap` strategies.
struct LocalVertices {
    std::vector<DeterministicStrategy> strategies;
    std::vector<ProbBox> boxes;
};

LocalVertices enumerate_local_vertices(const BellScenario& scenario,
                                       std::int64_t cap = 1'000'000);

}  // namespace bellbox

#pragma once

#include <cstdint>
#include <optional>

#include "bellbox/scenario.hpp"

namespace bellbox {

// Exact integer combinatorics for hidden-variable cardinality bounds. All
// functions throw TooLarge on std::int64_t overflow.

std::int64_t checked_pow(std::int64_t base, int exp);
std::int64_t binomial(int n, int k);

// Stirling numbers of the second kind S(k, j), memoized.
std::int64_t stirling_second(int k, int j);

struct LambdaStarBounds {
    std::int64_t lower = 1;
    std::int64_t upper = 1;
};

// Bounds on the minimal shared-randomness cardinality that suffices for
// every box in the local polytope. Upper bound is the smaller of
// v^(m(n-1)) and (m(v-1)+1)^n - 1; the lower bound counts the vertices of
// a maximal face through deterministic strategies:
//   (m(v-1)+1)^(n-1)
//     + sum_{k=2}^n sum_{j=2}^k C(n-1,k-1) C(m,j) S(k,j) (j-1)! (v-1)^k.
LambdaStarBounds lambda_star_bounds(const BellScenario& scenario);

// Cardinality that suffices for the shared randomness of any quantum
// realization at fixed local dimension: the statistical dimension
// (m(v-1)+1)^n - 1.
std::int64_t caratheodory_quantum(const BellScenario& scenario);

// For m = 2, v = 2 the quantum cardinality bound sharpens to 2(3^n - 1);
// no value otherwise.
std::optional<std::int64_t> masanes_dimension(const BellScenario& scenario);

// Shared-randomness cardinality d^n sufficient for any fully separable
// n-party state at local dimension d.
std::int64_t separable_lambda_bound(int local_dimension, int parties);

}  // namespace bellbox

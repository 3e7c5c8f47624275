#include "bellbox/counting.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace bellbox {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw TooLarge("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
    }
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw TooLarge("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
    }
    return r;
}

std::int64_t factorial(int n) {
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r = checked_mul(r, i);
    return r;
}

}  // namespace

std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // Exact at every step: r holds C(n, i-1) and C(n, i-1)*(n-k+i) is
        // divisible by i.
        r = checked_mul(r, n - k + i) / i;
    }
    return r;
}

std::int64_t stirling_second(int k, int j) {
    if (j < 0 || j > k) return 0;
    if (k == 0) return j == 0 ? 1 : 0;
    if (j == 0) return 0;
    static std::map<std::pair<int, int>, std::int64_t> cache;
    const auto key = std::make_pair(k, j);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const std::int64_t value =
        checked_add(checked_mul(j, stirling_second(k - 1, j)), stirling_second(k - 1, j - 1));
    cache[key] = value;
    return value;
}

LambdaStarBounds lambda_star_bounds(const BellScenario& scenario) {
    const int n = scenario.parties;
    const int m = scenario.inputs;
    const int v = scenario.outputs;
    LambdaStarBounds bounds;

    const std::int64_t base = checked_add(checked_mul(m, v - 1), 1);
    bounds.upper = std::min(checked_pow(v, m * (n - 1)), checked_add(checked_pow(base, n), -1));

    std::int64_t lower = checked_pow(base, n - 1);
    for (int k = 2; k <= n; ++k) {
        for (int j = 2; j <= k; ++j) {
            std::int64_t term = binomial(n - 1, k - 1);
            term = checked_mul(term, binomial(m, j));
            term = checked_mul(term, stirling_second(k, j));
            term = checked_mul(term, factorial(j - 1));
            term = checked_mul(term, checked_pow(v - 1, k));
            lower = checked_add(lower, term);
        }
    }
    bounds.lower = lower;
    return bounds;
}

std::int64_t caratheodory_quantum(const BellScenario& scenario) { return ns_dimension(scenario); }

std::optional<std::int64_t> masanes_dimension(const BellScenario& scenario) {
    if (scenario.inputs != 2 || scenario.outputs != 2) return std::nullopt;
    return checked_mul(2, checked_add(checked_pow(3, scenario.parties), -1));
}

std::int64_t separable_lambda_bound(int local_dimension, int parties) {
    if (local_dimension < 1 || parties < 1) {
        throw TooLarge("separable bound needs positive dimension and party count");
    }
    return checked_pow(local_dimension, parties);
}

}  // namespace bellbox

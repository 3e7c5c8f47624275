#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellbox/errors.hpp"

namespace bellbox {

// Default absolute tolerance for box validity checks (normalization,
// non-negativity, no-signalling).
inline constexpr double kBoxTolerance = 1e-9;

// A symmetric Bell scenario: n parties, each choosing among m inputs and
// observing one of v outputs.
struct BellScenario {
    int parties = 2;  // n >= 1
    int inputs = 2;   // m >= 1
    int outputs = 2;  // v >= 2

    BellScenario() = default;
    BellScenario(int n, int m, int v);

    bool operator==(const BellScenario&) const = default;

    std::int64_t input_tuples() const;   // m^n
    std::int64_t output_tuples() const;  // v^n
    std::int64_t table_size() const;     // m^n * v^n

    bool is_chsh() const { return parties == 2 && inputs == 2 && outputs == 2; }

    std::string to_string() const;
};

// Mixed-radix helpers for tuple <-> flat index conversion. Party 0 is the
// most significant digit (lexicographic order with party-0 outermost).
std::int64_t tuple_to_index(const std::vector<int>& digits, int radix);
std::vector<int> index_to_tuple(std::int64_t index, int radix, int length);

// A conditional probability table p[outputs|inputs]. Entries are stored
// row-major: input tuples outermost, output tuples innermost, both in
// lexicographic order with party 0 most significant.
class ProbBox {
  public:
    // Validates normalization, non-negativity and no-signalling; throws
    // InvalidBox if any check fails beyond `tol`.
    static ProbBox make(const BellScenario& scenario, std::vector<double> table,
                        double tol = kBoxTolerance);

    // Skips the no-signalling check (normalization and shape are still
    // enforced). Needed to build deliberately signalling tables for
    // diagnostics.
    static ProbBox make_unchecked(const BellScenario& scenario, std::vector<double> table);

    // Uniform box p[outputs|inputs] = v^-n.
    static ProbBox uniform(const BellScenario& scenario);

    const BellScenario& scenario() const { return scenario_; }
    const std::vector<double>& table() const { return table_; }

    double at(const std::vector<int>& inputs, const std::vector<int>& outputs) const;
    double at_flat(std::int64_t input_index, std::int64_t output_index) const;

    // Marginal probability of party `party` giving output `a` on input `x`,
    // with the remaining parties' inputs fixed to `context`.
    double party_marginal(int party, int x, int a, const std::vector<int>& context) const;

    // Marginal averaged over all other-party input contexts (stable under
    // tolerance-level signalling noise).
    double party_marginal_mean(int party, int x, int a) const;

    bool operator==(const ProbBox&) const = default;

  private:
    ProbBox(BellScenario scenario, std::vector<double> table)
        : scenario_(scenario), table_(std::move(table)) {}

    BellScenario scenario_;
    std::vector<double> table_;
};

// One no-signalling violation: party `party`'s outcome distribution for
// input `input` differs across the other parties' input contexts.
struct SignallingViolation {
    int party = 0;
    int input = 0;
    double magnitude = 0.0;  // max-min spread of the worst marginal
    std::string detail;
};

// Empty report iff every cross-context marginal spread is <= tol.
std::vector<SignallingViolation> check_no_signalling(const ProbBox& box,
                                                     double tol = kBoxTolerance);

// Entrywise convex combination. Weights must be nonnegative and sum to 1
// within 1e-12 (WeightError), scenarios must match (ScenarioMismatch).
ProbBox mix_boxes(const std::vector<ProbBox>& boxes, const std::vector<double>& weights);

// True iff the box factorizes into a product of single-party conditionals
// within `tol`, checked entrywise against the product of its own marginals.
bool is_product_box(const ProbBox& box, double tol = kBoxTolerance);

// Statistical dimension of the no-signalling set: (m(v-1)+1)^n - 1.
std::int64_t ns_dimension(const BellScenario& scenario);

// The minimal free coordinates of a no-signalling box, in the scheme where
// every probability involving outcome 0 is implicit: for k = 1..n, for each
// k-subset of parties (lexicographic), each input assignment on the subset,
// and each output assignment over {1..v-1}, the joint marginal probability.
// Length equals ns_dimension(scenario).
std::vector<double> free_parameters(const ProbBox& box);

}  // namespace bellbox

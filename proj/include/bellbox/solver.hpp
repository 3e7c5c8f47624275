#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bellbox/correlator.hpp"
#include "bellbox/lhv.hpp"
#include "bellbox/local_polytope.hpp"
#include "bellbox/optimize.hpp"
#include "bellbox/quantum.hpp"

namespace bellbox {

struct SolverConfig {
    std::uint64_t seed = 0;
    int restarts = 64;
    int threads = 0;  // 0 = all available, 1 = serial reference path
    Algorithm algorithm = Algorithm::DerivativeFreeSimplex;
    int max_iterations = 2000;
    double optimizer_tolerance = 1e-12;
    // Distances at or below feasibility_tol count as membership; distances
    // above infeasibility_tol count as (heuristic) nonmembership; anything
    // between is inconclusive.
    double feasibility_tol = 1e-6;
    double infeasibility_tol = 1e-3;
    bool pvm_only = false;
    // Stop the restart schedule once membership is proven; used inside
    // bisection loops where only the verdict matters.
    bool early_stop = false;
};

enum class Verdict { Feasible, Infeasible, Inconclusive };
std::string to_string(Verdict verdict);

struct MembershipResult {
    Verdict verdict = Verdict::Inconclusive;
    std::string set_description;
    // Euclidean distance in the comparison coordinates (correlator
    // coordinates for the two-input binary scenario, free parameters
    // otherwise), recomputed from the decoded best parameters after the
    // search.
    double best_distance = 0.0;
    std::vector<double> best_parameters;
    int restarts_used = 0;
    int best_restart = -1;
    std::vector<std::string> trace;

    // The realization behind best_parameters, by target set kind.
    std::optional<QubitRealization> qubit;
    std::optional<LHVModel> lhv;
    std::optional<HybridRealization> hybrid;
};

// Distance from `target` to the two-qubit set; (2,2,2) only. With
// config.pvm_only the measurements are restricted to projective ones.
MembershipResult nearest_in_q2(const ProbBox& target, const SolverConfig& config);

// Distance to the set of mixtures of at most `cardinality` product boxes.
// At or above the worst-case cardinality bound the set equals the full
// local polytope and the question is settled exactly by linear programming;
// below it the nonconvex set is searched by restarts.
MembershipResult nearest_in_l_lambda(const ProbBox& target, int cardinality,
                                     const SolverConfig& config);

// Exact local-polytope membership (the unlimited-cardinality case).
MembershipResult local_membership(const ProbBox& target, const SolverConfig& config);

// Distance to mixtures of at most `cardinality` strategies of local
// dimension `local_dimension`. Dimension 2 uses the closed-form qubit
// statistics; higher dimensions build states and effects explicitly and
// accept (2,2,2) targets.
MembershipResult nearest_in_hybrid(const ProbBox& target, int local_dimension, int cardinality,
                                   const SolverConfig& config);

// Which box set a membership query targets, as written on the command line:
// "q2", "local", "l:<cardinality>", or "hybrid:<dimension>:<cardinality>".
struct SetDescriptor {
    enum class Kind { Q2, Local, LimitedLocal, Hybrid };
    Kind kind = Kind::Q2;
    int local_dimension = 2;
    int cardinality = 1;
};

SetDescriptor parse_set_descriptor(const std::string& text);
std::string to_string(const SetDescriptor& set);

MembershipResult decide_membership(const ProbBox& target, const SetDescriptor& set,
                                   const SolverConfig& config);

struct ChshMaximum {
    double value = 0.0;
    QubitRealization realization;
    int restarts_used = 0;
};

// max over the two-qubit set of the canonical CHSH combination.
ChshMaximum maximize_chsh(const SolverConfig& config);

// Bisection on a feasibility predicate over [0, 1], assuming feasibility is
// monotone (feasible near 0, infeasible past the threshold).
struct CriticalWeight {
    std::string verdict;  // bracketed | all-feasible | anchor-not-found
    double critical = 0.0;
    int evaluations = 0;
};

CriticalWeight critical_weight(const std::function<bool(double)>& feasible_at, double tol);

// Largest weight c such that mix(anchor, direction; 1-c, c) stays in the
// queried set, bracketed to within tol. Throws AnchorInfeasible when the
// anchor itself fails the query; returns 1 when the whole segment passes.
double critical_weight(const CorrelatorBox& anchor, const CorrelatorBox& direction,
                       const std::function<bool(const ProbBox&)>& membership, double tol);

}  // namespace bellbox

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bellbox/qubit.hpp"

namespace bellbox {

// A bipartite quantum strategy at an explicit local dimension d: a density
// matrix on C^d (x) C^d (party-0-major index i*d + j) and one binary-or-more
// outcome measurement per party and input.
struct GeneralRealization {
    int local_dimension = 2;
    Eigen::MatrixXcd rho;  // d^2 x d^2, Hermitian, PSD, unit trace
    // effects[party][input][output], each d x d, PSD, summing to identity
    // over outputs.
    std::vector<std::vector<std::vector<Eigen::MatrixXcd>>> effects;

    static GeneralRealization from_pure(int local_dimension, const Eigen::VectorXcd& psi,
                                        std::vector<std::vector<std::vector<Eigen::MatrixXcd>>> effects);

    BellScenario scenario() const;
};

void validate(const GeneralRealization& r, double tol = kOperatorTolerance);

// p(ab|xy) = Tr[rho (A_{a|x} (x) B_{b|y})].
ProbBox born_box(const GeneralRealization& r, double tol = kBoxTolerance);

// Lifts the parameterized two-qubit strategy to an explicit d = 2
// realization.
GeneralRealization embed_qubit(const QubitRealization& r);

// A classically flagged family of equal-dimension strategies: the shared
// flag i occurs with probability weights[i] and both parties play
// components[i].
struct HybridRealization {
    std::vector<double> weights;
    std::vector<GeneralRealization> components;
};

void validate(const HybridRealization& r, double tol = kOperatorTolerance);

ProbBox hybrid_box(const HybridRealization& r);

// Packs a hybrid into a single realization of local dimension d*N by
// attaching a shared N-level ancilla flag to each side: the state becomes
// sum_i w_i rho_i (x) |ii><ii| and each effect acts block-diagonally. The
// combined local index is s*N + t with s the original level and t the flag.
GeneralRealization direct_sum(const HybridRealization& r);

// Largest rank of a reduced state of either party; the local dimension the
// realization actually uses.
int effective_bipartite_dimension(const GeneralRealization& r, double tol = kOperatorTolerance);

}  // namespace bellbox

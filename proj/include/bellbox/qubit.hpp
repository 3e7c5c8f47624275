#pragma once

#include <Eigen/Dense>
#include <array>

#include "bellbox/correlator.hpp"

namespace bellbox {

// Validity tolerance for states and measurement operators.
inline constexpr double kOperatorTolerance = 1e-9;

// Pure two-qubit state cos(alpha/2)|00> + sin(alpha/2)|11> in its Schmidt
// basis; alpha in [0, pi] covers every entanglement degree, with product
// states at the endpoints and the maximally entangled state at pi/2.
struct SchmidtState {
    double alpha = 0.0;

    static SchmidtState make(double alpha);  // throws InvalidState outside [0, pi]

    Eigen::Vector4cd vector() const;  // party-0-major amplitudes
};

// Binary qubit measurement with effects
//   E(a) = ((1 + s(a) kappa) I + s(a) eta n.sigma) / 2,   s(a) = (-1)^(1-a),
// where n = (sin t cos p, sin t sin p, cos t). Valid iff 0 <= eta and
// |kappa| <= 1 - eta; projective exactly at kappa = 0, eta = 1.
struct BinaryMeasurement {
    double kappa = 0.0;
    double eta = 1.0;
    double theta = 0.0;
    double phi = 0.0;

    // Folds (theta, phi) onto the canonical chart theta in [0, pi],
    // phi in [0, 2pi) without moving the Bloch direction, then validates.
    static BinaryMeasurement make(double kappa, double eta, double theta, double phi);

    bool is_projective(double tol = kOperatorTolerance) const;

    Eigen::Vector3d bloch_direction() const;
    Eigen::Matrix2cd effect(int output) const;  // output in {0, 1}
};

void validate_povm(const BinaryMeasurement& m, double tol = kOperatorTolerance);

// A two-qubit strategy for the two-party, two-input, binary-output
// scenario: measurements ordered A0, A1, B0, B1.
struct QubitRealization {
    SchmidtState state;
    std::array<BinaryMeasurement, 4> measurements;

    const BinaryMeasurement& alice(int x) const { return measurements[x]; }
    const BinaryMeasurement& bob(int y) const { return measurements[2 + y]; }
};

void validate(const QubitRealization& r, double tol = kOperatorTolerance);

// Closed-form statistics of a qubit realization:
//   <A_x>     = eta_A cos(alpha) cos(t_A) + kappa_A
//   <A_x B_y> = eta_A eta_B [cos(p_A + p_B) sin(alpha) sin(t_A) sin(t_B)
//               + cos(t_A) cos(t_B)]
//               + eta_A kappa_B cos(alpha) cos(t_A)
//               + eta_B kappa_A cos(alpha) cos(t_B) + kappa_A kappa_B.
CorrelatorBox qubit_box_analytic(const QubitRealization& r);

// Convenience: the probability table of the analytic statistics.
ProbBox qubit_prob_box(const QubitRealization& r);

}  // namespace bellbox

#include "bellbox/qubit.hpp"

#include <cmath>
#include <numbers>

namespace bellbox {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of(int a) { return a == 1 ? 1.0 : -1.0; }

}  // namespace

SchmidtState SchmidtState::make(double alpha) {
    if (!(alpha >= 0.0 && alpha <= kPi)) {
        throw InvalidState("Schmidt angle " + std::to_string(alpha) + " outside [0, pi]");
    }
    return SchmidtState{alpha};
}

Eigen::Vector4cd SchmidtState::vector() const {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = std::cos(alpha / 2.0);
    psi(3) = std::sin(alpha / 2.0);
    return psi;
}

BinaryMeasurement BinaryMeasurement::make(double kappa, double eta, double theta, double phi) {
    // Fold the polar angle into [0, pi]; theta -> 2pi - theta together with
    // phi -> phi + pi fixes the Bloch direction.
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta < 0.0) theta += 2.0 * kPi;
    if (theta > kPi) {
        theta = 2.0 * kPi - theta;
        phi += kPi;
    }
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;

    BinaryMeasurement m{kappa, eta, theta, phi};
    validate_povm(m);
    return m;
}

bool BinaryMeasurement::is_projective(double tol) const {
    return std::abs(kappa) <= tol && std::abs(eta - 1.0) <= tol;
}

Eigen::Vector3d BinaryMeasurement::bloch_direction() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Eigen::Matrix2cd BinaryMeasurement::effect(int output) const {
    const double s = sign_of(output);
    const Eigen::Vector3d n = bloch_direction();
    Eigen::Matrix2cd e;
    const std::complex<double> i(0.0, 1.0);
    // ((1 + s kappa) I + s eta n.sigma) / 2 with sigma the Pauli vector.
    e(0, 0) = (1.0 + s * kappa + s * eta * n.z()) / 2.0;
    e(1, 1) = (1.0 + s * kappa - s * eta * n.z()) / 2.0;
    e(0, 1) = s * eta * (n.x() - i * n.y()) / 2.0;
    e(1, 0) = s * eta * (n.x() + i * n.y()) / 2.0;
    return e;
}

void validate_povm(const BinaryMeasurement& m, double tol) {
    if (m.eta < -tol) {
        throw InvalidPovm("negative sharpness " + std::to_string(m.eta));
    }
    if (std::abs(m.kappa) > 1.0 - m.eta + tol) {
        throw InvalidPovm("bias " + std::to_string(m.kappa) + " exceeds 1 - eta = " +
                          std::to_string(1.0 - m.eta));
    }
    if (m.theta < -tol || m.theta > kPi + tol) {
        throw InvalidPovm("polar angle " + std::to_string(m.theta) + " outside [0, pi]");
    }
}

void validate(const QubitRealization& r, double tol) {
    if (!(r.state.alpha >= -tol && r.state.alpha <= kPi + tol)) {
        throw InvalidState("Schmidt angle " + std::to_string(r.state.alpha) + " outside [0, pi]");
    }
    for (const auto& m : r.measurements) validate_povm(m, tol);
}

CorrelatorBox qubit_box_analytic(const QubitRealization& r) {
    const double ca = std::cos(r.state.alpha);
    const double sa = std::sin(r.state.alpha);
    CorrelatorBox box;
    for (int x = 0; x < 2; ++x) {
        const auto& a = r.alice(x);
        box.marginals[x] = a.eta * ca * std::cos(a.theta) + a.kappa;
    }
    for (int y = 0; y < 2; ++y) {
        const auto& b = r.bob(y);
        box.marginals[2 + y] = b.eta * ca * std::cos(b.theta) + b.kappa;
    }
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const auto& a = r.alice(x);
            const auto& b = r.bob(y);
            const double value =
                a.eta * b.eta *
                    (std::cos(a.phi + b.phi) * sa * std::sin(a.theta) * std::sin(b.theta) +
                     std::cos(a.theta) * std::cos(b.theta)) +
                a.eta * b.kappa * ca * std::cos(a.theta) +
                b.eta * a.kappa * ca * std::cos(b.theta) + a.kappa * b.kappa;
            box.correlators[y * 2 + x] = value;
        }
    }
    return box;
}

ProbBox qubit_prob_box(const QubitRealization& r) {
    return probs_from_correlators(qubit_box_analytic(r));
}

}  // namespace bellbox

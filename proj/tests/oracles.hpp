#pragma once

// Independent reference implementations used only by tests. These are
// deliberately written against the definitions, not the library code paths
// they check.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bellbox/correlator.hpp"
#include "bellbox/qubit.hpp"
#include "bellbox/scenario.hpp"

namespace oracles {

// splitmix64; fixed-seed deterministic stream for test data.
class TestRng {
  public:
    explicit TestRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  private:
    std::uint64_t state_;
};

// The 16 deterministic boxes of the (2,2,2) scenario: a = f(x), b = g(y),
// with f and g each encoded as two bits (value on input 0, value on input 1).
inline std::vector<bellbox::ProbBox> chsh_deterministic_boxes() {
    const bellbox::BellScenario sc{2, 2, 2};
    std::vector<bellbox::ProbBox> boxes;
    for (int f = 0; f < 4; ++f) {
        for (int g = 0; g < 4; ++g) {
            std::vector<double> table(16, 0.0);
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    const int a = (f >> x) & 1;
                    const int b = (g >> y) & 1;
                    table[(x * 2 + y) * 4 + a * 2 + b] = 1.0;
                }
            }
            boxes.push_back(bellbox::ProbBox::make(sc, std::move(table)));
        }
    }
    return boxes;
}

// A random point of the (2,2,2) local polytope: a random convex mixture of
// the deterministic boxes.
inline bellbox::ProbBox random_local_box(TestRng& rng) {
    const auto vertices = chsh_deterministic_boxes();
    std::vector<double> weights(vertices.size());
    double sum = 0.0;
    for (auto& w : weights) {
        w = -std::log(1.0 - rng.uniform());  // exponential, so the simplex is hit uniformly
        sum += w;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        weights[i] /= sum;
        acc += weights[i];
    }
    weights.back() = 1.0 - acc;
    return bellbox::mix_boxes(vertices, weights);
}

// Reference reconstruction of a (2,2,2) probability table from correlator
// coordinates by solving, per input pair, the 4x4 linear system
//   sum_ab p = 1,  sum s(a) p = <A_x>,  sum s(b) p = <B_y>,
//   sum s(a)s(b) p = <A_x B_y>.
inline std::vector<double> reconstruct_by_linear_solve(const bellbox::CorrelatorBox& box) {
    std::vector<double> table(16, 0.0);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            Eigen::Matrix4d lhs;
            Eigen::Vector4d rhs;
            for (int ab = 0; ab < 4; ++ab) {
                const int a = ab / 2;
                const int b = ab % 2;
                const double sa = a == 1 ? 1.0 : -1.0;
                const double sb = b == 1 ? 1.0 : -1.0;
                lhs(0, ab) = 1.0;
                lhs(1, ab) = sa;
                lhs(2, ab) = sb;
                lhs(3, ab) = sa * sb;
            }
            rhs << 1.0, box.marginals[x], box.marginals[2 + y], box.correlators[y * 2 + x];
            const Eigen::Vector4d p = lhs.fullPivLu().solve(rhs);
            for (int ab = 0; ab < 4; ++ab) table[(x * 2 + y) * 4 + ab] = p(ab);
        }
    }
    return table;
}

// Samples the full validity region: eta in [0,1], |kappa| <= 1 - eta.
inline bellbox::QubitRealization random_qubit_realization(TestRng& rng) {
    const double pi = std::acos(-1.0);
    bellbox::QubitRealization r;
    r.state = bellbox::SchmidtState::make(rng.uniform(0.0, pi));
    for (auto& m : r.measurements) {
        const double eta = rng.uniform();
        const double kappa = rng.uniform(-(1.0 - eta), 1.0 - eta);
        m = bellbox::BinaryMeasurement::make(kappa, eta, rng.uniform(0.0, pi),
                                            rng.uniform(0.0, 2.0 * pi));
    }
    return r;
}

// Reference statistics straight from the Born rule, built independently of
// the library's effect construction: the outcome observable of a binary
// measurement is kappa I + eta n.sigma, so
//   <A_x>     = <psi| O_A (x) I |psi>
//   <A_x B_y> = <psi| O_A (x) O_B |psi>.
inline bellbox::CorrelatorBox born_correlators_reference(const bellbox::QubitRealization& r) {
    using Eigen::Matrix2cd;
    using Eigen::Matrix4cd;
    using Eigen::Vector4cd;
    const std::complex<double> i(0.0, 1.0);

    const auto observable = [&](const bellbox::BinaryMeasurement& m) {
        Matrix2cd sx, sy, sz;
        sx << 0, 1, 1, 0;
        sy << 0, -i, i, 0;
        sz << 1, 0, 0, -1;
        const double nx = std::sin(m.theta) * std::cos(m.phi);
        const double ny = std::sin(m.theta) * std::sin(m.phi);
        const double nz = std::cos(m.theta);
        return Matrix2cd(m.kappa * Matrix2cd::Identity() + m.eta * (nx * sx + ny * sy + nz * sz));
    };
    const auto kron2 = [](const Matrix2cd& a, const Matrix2cd& b) {
        Matrix4cd out;
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) out.block<2, 2>(2 * p, 2 * q) = a(p, q) * b;
        return out;
    };

    Vector4cd psi = Vector4cd::Zero();
    psi(0) = std::cos(r.state.alpha / 2.0);
    psi(3) = std::sin(r.state.alpha / 2.0);

    bellbox::CorrelatorBox box;
    const Matrix2cd id = Matrix2cd::Identity();
    for (int x = 0; x < 2; ++x) {
        box.marginals[x] = (psi.adjoint() * kron2(observable(r.alice(x)), id) * psi)(0).real();
        box.marginals[2 + x] = (psi.adjoint() * kron2(id, observable(r.bob(x))) * psi)(0).real();
    }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            box.correlators[y * 2 + x] =
                (psi.adjoint() * kron2(observable(r.alice(x)), observable(r.bob(y))) * psi)(0)
                    .real();
    return box;
}

}  // namespace oracles

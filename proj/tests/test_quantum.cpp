#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellbox/quantum.hpp"
#include "oracles.hpp"

using namespace bellbox;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("embedding a qubit strategy reproduces its closed form") {
    oracles::TestRng rng(211u);
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = oracles::random_qubit_realization(rng);
        const auto via_born = born_box(embed_qubit(r));
        const auto via_formula = qubit_prob_box(r);
        for (int i = 0; i < 16; ++i) {
            CHECK(via_born.table()[i] == doctest::Approx(via_formula.table()[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("realization validation") {
    oracles::TestRng rng(1u);
    auto r = embed_qubit(oracles::random_qubit_realization(rng));
    CHECK_NOTHROW(validate(r));

    auto bad_state = r;
    bad_state.rho *= 2.0;
    CHECK_THROWS_AS(validate(bad_state), InvalidState);

    auto bad_sum = r;
    bad_sum.effects[0][0][0] *= 0.5;
    CHECK_THROWS_AS(validate(bad_sum), InvalidPovm);

    auto bad_psd = r;
    bad_psd.effects[1][1][0] = Eigen::Matrix2cd::Identity() * 2.0;
    bad_psd.effects[1][1][1] = -Eigen::Matrix2cd::Identity();
    CHECK_THROWS_AS(validate(bad_psd), InvalidPovm);

    auto bad_dim = r;
    bad_dim.local_dimension = 3;
    CHECK_THROWS_AS(validate(bad_dim), DimensionMismatch);
}

TEST_CASE("Born rule beyond qubits: maximally entangled qutrits") {
    const int d = 3;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(9);
    for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(3.0);
    std::vector<std::vector<std::vector<Eigen::MatrixXcd>>> effects(
        2, std::vector<std::vector<Eigen::MatrixXcd>>(1));
    for (int party = 0; party < 2; ++party) {
        for (int a = 0; a < d; ++a) {
            Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(d, d);
            proj(a, a) = 1.0;
            effects[party][0].push_back(proj);
        }
    }
    const auto r = GeneralRealization::from_pure(d, psi, effects);
    const auto box = born_box(r);
    CHECK(box.scenario() == BellScenario{2, 1, 3});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            CHECK(box.at({0, 0}, {a, b}) == doctest::Approx(a == b ? 1.0 / 3.0 : 0.0));
    CHECK(effective_bipartite_dimension(r) == 3);
}

TEST_CASE("hybrid mixtures and their direct-sum packing agree") {
    oracles::TestRng rng(307u);
    for (int trial = 0; trial < 10; ++trial) {
        HybridRealization h;
        const double w = rng.uniform(0.05, 0.95);
        h.weights = {w, 1.0 - w};
        h.components.push_back(embed_qubit(oracles::random_qubit_realization(rng)));
        h.components.push_back(embed_qubit(oracles::random_qubit_realization(rng)));

        const auto mixed = hybrid_box(h);
        const auto packed = direct_sum(h);
        CHECK(packed.local_dimension == 4);
        const auto packed_box = born_box(packed);
        for (int i = 0; i < 16; ++i) {
            CHECK(packed_box.table()[i] == doctest::Approx(mixed.table()[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("hybrid validation") {
    oracles::TestRng rng(11u);
    HybridRealization h;
    h.weights = {0.5, 0.4};
    h.components.push_back(embed_qubit(oracles::random_qubit_realization(rng)));
    h.components.push_back(embed_qubit(oracles::random_qubit_realization(rng)));
    CHECK_THROWS_AS(validate(h), WeightError);
    h.weights = {0.5, 0.5, 0.0};
    CHECK_THROWS_AS(validate(h), InvalidModel);
}

TEST_CASE("effective dimension distinguishes product, entangled and stacked states") {
    QubitRealization prod;
    prod.state = SchmidtState::make(0.0);
    for (auto& m : prod.measurements) m = BinaryMeasurement::make(0.0, 1.0, 0.3, 0.1);
    CHECK(effective_bipartite_dimension(embed_qubit(prod)) == 1);

    QubitRealization ent = prod;
    ent.state = SchmidtState::make(kPi / 2.0);
    CHECK(effective_bipartite_dimension(embed_qubit(ent)) == 2);

    HybridRealization h;
    h.weights = {0.5, 0.5};
    QubitRealization a = ent;
    a.state = SchmidtState::make(kPi / 3.0);
    QubitRealization b = ent;
    b.state = SchmidtState::make(2.0 * kPi / 3.0);
    h.components = {embed_qubit(a), embed_qubit(b)};
    CHECK(effective_bipartite_dimension(direct_sum(h)) == 4);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellbox/correlator.hpp"
#include "bellbox/lhv.hpp"
#include "oracles.hpp"

using namespace bellbox;

TEST_CASE("deterministic strategy boxes") {
    const BellScenario chsh{2, 2, 2};
    // a = x, b = 1.
    const DeterministicStrategy s{{{0, 1}, {1, 1}}};
    const auto box = strategy_box(s, chsh);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(box.at({x, y}, {x, 1}) == doctest::Approx(1.0));
    CHECK(check_no_signalling(box).empty());
    CHECK(is_product_box(box));

    CHECK_THROWS_AS(strategy_box(DeterministicStrategy{{{0, 1}}}, chsh), InvalidModel);
    CHECK_THROWS_AS(strategy_box(DeterministicStrategy{{{0, 2}, {0, 0}}}, chsh), InvalidModel);
}

TEST_CASE("model construction and mixing") {
    const BellScenario chsh{2, 2, 2};
    const DeterministicStrategy s1{{{1, 1}, {1, 1}}};
    const DeterministicStrategy s2{{{0, 0}, {0, 0}}};
    const auto model = LHVModel::from_deterministic({0.25, 0.75}, {s1, s2}, chsh);
    const auto box = lhv_box(model, chsh);
    const auto expected =
        mix_boxes({strategy_box(s1, chsh), strategy_box(s2, chsh)}, {0.25, 0.75});
    for (int i = 0; i < 16; ++i) {
        CHECK(box.table()[i] == doctest::Approx(expected.table()[i]).epsilon(1e-14));
    }

    LHVModel bad = model;
    bad.weights = {0.5, 0.6};
    CHECK_THROWS_AS(validate(bad, chsh), InvalidModel);
    bad = model;
    bad.responses[0][0][0] = {0.5, 0.6};
    CHECK_THROWS_AS(validate(bad, chsh), InvalidModel);
}

TEST_CASE("stochastic responses stay within cardinality one") {
    const BellScenario chsh{2, 2, 2};
    LHVModel model;
    model.weights = {1.0};
    model.responses = {{{{0.5, 0.5}, {0.5, 0.5}}, {{0.5, 0.5}, {0.5, 0.5}}}};
    const auto box = lhv_box(model, chsh);
    for (double p : box.table()) CHECK(p == doctest::Approx(0.25));
    CHECK(is_product_box(box));
}

TEST_CASE("two shared coins reproduce the isotropic correlation box") {
    const BellScenario chsh{2, 2, 2};
    // lambda = (c0, c1); on input x both parties answer coin c_x.
    std::vector<DeterministicStrategy> strategies;
    for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1)
            strategies.push_back(DeterministicStrategy{{{c0, c1}, {c0, c1}}});
    const auto model =
        LHVModel::from_deterministic({0.25, 0.25, 0.25, 0.25}, strategies, chsh);
    const auto got = correlators_from_probs(lhv_box(model, chsh));
    const auto want = canonical_box(BoxLabel::P14);
    for (int i = 0; i < 4; ++i) {
        CHECK(got.marginals[i] == doctest::Approx(want.marginals[i]).epsilon(1e-14));
        CHECK(got.correlators[i] == doctest::Approx(want.correlators[i]).epsilon(1e-14));
    }
}

TEST_CASE("vertex enumeration") {
    const auto chsh = enumerate_local_vertices(BellScenario{2, 2, 2});
    CHECK(chsh.strategies.size() == 16);
    CHECK(chsh.boxes.size() == 16);
    for (const auto& box : chsh.boxes) {
        CHECK(check_no_signalling(box).empty());
        for (double p : box.table()) CHECK((p == 0.0 || p == 1.0));
    }
    // All vertices are distinct boxes.
    for (std::size_t i = 0; i < chsh.boxes.size(); ++i)
        for (std::size_t j = i + 1; j < chsh.boxes.size(); ++j)
            CHECK_FALSE(chsh.boxes[i] == chsh.boxes[j]);

    CHECK(enumerate_local_vertices(BellScenario{2, 3, 2}).boxes.size() == 64);
    CHECK(enumerate_local_vertices(BellScenario{3, 2, 2}).boxes.size() == 64);
    CHECK_THROWS_AS(enumerate_local_vertices(BellScenario{2, 2, 2}, 10), TooLarge);
}

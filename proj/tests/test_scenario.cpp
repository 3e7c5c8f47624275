#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellbox/scenario.hpp"
#include "oracles.hpp"

using namespace bellbox;

TEST_CASE("scenario validation and sizes") {
    CHECK_THROWS_AS(BellScenario(0, 2, 2), WrongScenario);
    CHECK_THROWS_AS(BellScenario(2, 0, 2), WrongScenario);
    CHECK_THROWS_AS(BellScenario(2, 2, 1), WrongScenario);

    const BellScenario chsh{2, 2, 2};
    CHECK(chsh.input_tuples() == 4);
    CHECK(chsh.output_tuples() == 4);
    CHECK(chsh.table_size() == 16);
    CHECK(chsh.is_chsh());

    const BellScenario tripartite{3, 2, 2};
    CHECK(tripartite.table_size() == 64);
    CHECK_FALSE(tripartite.is_chsh());
    CHECK(tripartite.to_string() == "(3,2,2)");
}

TEST_CASE("tuple index round trip") {
    for (std::int64_t i = 0; i < 27; ++i) {
        const auto t = index_to_tuple(i, 3, 3);
        CHECK(tuple_to_index(t, 3) == i);
    }
    // Party 0 is the most significant digit.
    CHECK(tuple_to_index({1, 0}, 2) == 2);
    CHECK(index_to_tuple(2, 2, 2) == std::vector<int>{1, 0});
}

TEST_CASE("box construction rejects malformed tables") {
    const BellScenario chsh{2, 2, 2};
    CHECK_THROWS_AS(ProbBox::make(chsh, std::vector<double>(8, 0.125)), InvalidBox);

    std::vector<double> negative(16, 0.25);
    negative[0] = -0.25;
    negative[1] = 0.75;
    CHECK_THROWS_AS(ProbBox::make(chsh, negative), InvalidBox);

    std::vector<double> unnormalized(16, 0.3);
    CHECK_THROWS_AS(ProbBox::make(chsh, unnormalized), InvalidBox);
    CHECK_THROWS_AS(ProbBox::make_unchecked(chsh, unnormalized), InvalidBox);

    const ProbBox u = ProbBox::uniform(chsh);
    CHECK(u.at({0, 1}, {1, 0}) == 0.25);
    CHECK(check_no_signalling(u).empty());
}

TEST_CASE("signalling table is caught and localized") {
    const BellScenario chsh{2, 2, 2};
    // Alice's outcome on input 0 leaks Bob's input: p(a=1|x=0) is 0.5 when
    // y=0 but 0.7 when y=1. All other marginals are context independent.
    std::vector<double> table(16, 0.0);
    auto set_block = [&](int x, int y, double p_a1) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                table[(x * 2 + y) * 4 + a * 2 + b] = (a == 1 ? p_a1 : 1.0 - p_a1) * 0.5;
    };
    set_block(0, 0, 0.5);
    set_block(0, 1, 0.7);
    set_block(1, 0, 0.5);
    set_block(1, 1, 0.5);

    CHECK_THROWS_AS(ProbBox::make(chsh, table), InvalidBox);
    const ProbBox box = ProbBox::make_unchecked(chsh, table);
    const auto violations = check_no_signalling(box);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].party == 0);
    CHECK(violations[0].input == 0);
    CHECK(violations[0].magnitude == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("mixing boxes") {
    const BellScenario chsh{2, 2, 2};
    const ProbBox u = ProbBox::uniform(chsh);
    std::vector<double> det(16, 0.0);
    for (int xy = 0; xy < 4; ++xy) det[xy * 4 + 3] = 1.0;  // a=b=1 always
    const ProbBox d = ProbBox::make(chsh, det);

    const ProbBox mixed = mix_boxes({u, d}, {0.25, 0.75});
    CHECK(mixed.at({0, 0}, {1, 1}) == doctest::Approx(0.25 * 0.25 + 0.75));
    CHECK(mixed.at({0, 0}, {0, 1}) == doctest::Approx(0.25 * 0.25));

    CHECK_THROWS_AS(mix_boxes({u, d}, {0.5, 0.6}), WeightError);
    CHECK_THROWS_AS(mix_boxes({u, d}, {1.5, -0.5}), WeightError);
    CHECK_THROWS_AS(mix_boxes({u, d}, {1.0}), WeightError);
    const ProbBox other = ProbBox::uniform(BellScenario{2, 3, 2});
    CHECK_THROWS_AS(mix_boxes({u, other}, {0.5, 0.5}), ScenarioMismatch);
}

TEST_CASE("product box detection") {
    const BellScenario chsh{2, 2, 2};
    // p(a|x) independent of y, p(b|y) independent of x.
    std::vector<double> table(16, 0.0);
    const double pa[2] = {0.3, 0.8};  // p(a=1|x)
    const double pb[2] = {0.6, 0.1};  // p(b=1|y)
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    table[(x * 2 + y) * 4 + a * 2 + b] =
                        (a ? pa[x] : 1 - pa[x]) * (b ? pb[y] : 1 - pb[y]);
    CHECK(is_product_box(ProbBox::make(chsh, table)));

    // Perfectly correlated outcomes are local but not product.
    std::vector<double> corr(16, 0.0);
    for (int xy = 0; xy < 4; ++xy) {
        corr[xy * 4 + 0] = 0.5;
        corr[xy * 4 + 3] = 0.5;
    }
    CHECK_FALSE(is_product_box(ProbBox::make(chsh, corr)));
}

TEST_CASE("free parameter count matches statistical dimension") {
    CHECK(ns_dimension(BellScenario{2, 2, 2}) == 8);
    CHECK(ns_dimension(BellScenario{2, 3, 2}) == 15);
    CHECK(ns_dimension(BellScenario{3, 2, 2}) == 26);
    CHECK(ns_dimension(BellScenario{2, 2, 3}) == 24);

    oracles::TestRng rng(7u);
    for (int trial = 0; trial < 5; ++trial) {
        const auto box = oracles::random_local_box(rng);
        CHECK(free_parameters(box).size() == 8);
    }
    const auto tri = ProbBox::uniform(BellScenario{3, 2, 2});
    CHECK(free_parameters(tri).size() == 26);
}

TEST_CASE("free parameters of the uniform box") {
    const auto params = free_parameters(ProbBox::uniform(BellScenario{2, 2, 2}));
    REQUIRE(params.size() == 8);
    for (int i = 0; i < 4; ++i) CHECK(params[i] == doctest::Approx(0.5));   // single-party
    for (int i = 4; i < 8; ++i) CHECK(params[i] == doctest::Approx(0.25));  // joint
}

TEST_CASE("free parameters are linear in the box") {
    oracles::TestRng rng(11u);
    const auto a = oracles::random_local_box(rng);
    const auto b = oracles::random_local_box(rng);
    const auto mixed = mix_boxes({a, b}, {0.3, 0.7});
    const auto pa = free_parameters(a);
    const auto pb = free_parameters(b);
    const auto pm = free_parameters(mixed);
    for (std::size_t i = 0; i < pm.size(); ++i) {
        CHECK(pm[i] == doctest::Approx(0.3 * pa[i] + 0.7 * pb[i]).epsilon(1e-12));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellbox/linprog.hpp"
#include "oracles.hpp"

using namespace bellbox;

TEST_CASE("basic optimum") {
    // min -x - 2y  s.t.  x + y + s = 4,  y + t = 3,  all >= 0.
    LpProblem lp;
    lp.a = Eigen::MatrixXd::Zero(2, 4);
    lp.a << 1, 1, 1, 0, 0, 1, 0, 1;
    lp.b = Eigen::VectorXd(2);
    lp.b << 4, 3;
    lp.c = Eigen::VectorXd(4);
    lp.c << -1, -2, 0, 0;
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-7.0));
    CHECK(r.x(0) == doctest::Approx(1.0));
    CHECK(r.x(1) == doctest::Approx(3.0));
}

TEST_CASE("infeasible system") {
    // x + y = -1 with x, y >= 0.
    LpProblem lp;
    lp.a = Eigen::MatrixXd::Ones(1, 2);
    lp.b = Eigen::VectorXd::Constant(1, -1.0);
    lp.c = Eigen::VectorXd::Zero(2);
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);

    // Contradictory equalities: x = 1 and x = 2.
    LpProblem lp2;
    lp2.a = Eigen::MatrixXd::Ones(2, 1);
    lp2.b = Eigen::VectorXd(2);
    lp2.b << 1, 2;
    lp2.c = Eigen::VectorXd::Zero(1);
    CHECK(solve_lp(lp2).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded objective") {
    // min -x  s.t.  x - y = 0.
    LpProblem lp;
    lp.a = Eigen::MatrixXd(1, 2);
    lp.a << 1, -1;
    lp.b = Eigen::VectorXd::Zero(1);
    lp.c = Eigen::VectorXd(2);
    lp.c << -1, 0;
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("redundant rows are tolerated") {
    // Same constraint twice plus an optimum on a degenerate vertex.
    LpProblem lp;
    lp.a = Eigen::MatrixXd(3, 3);
    lp.a << 1, 1, 0, 1, 1, 0, 0, 1, 1;
    lp.b = Eigen::VectorXd(3);
    lp.b << 1, 1, 1;
    lp.c = Eigen::VectorXd(3);
    lp.c << 0, -1, 0;
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-1.0));
}

TEST_CASE("random convex combinations are recovered as feasible") {
    oracles::TestRng rng(41u);
    for (int trial = 0; trial < 25; ++trial) {
        const int rows = 5 + rng.uniform_int(4);
        const int cols = rows + 2 + rng.uniform_int(6);
        Eigen::MatrixXd v(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) v(i, j) = rng.uniform(-1.0, 1.0);
        Eigen::VectorXd w(cols);
        double sum = 0.0;
        for (int j = 0; j < cols; ++j) {
            w(j) = -std::log(1.0 - rng.uniform());
            sum += w(j);
        }
        w /= sum;

        LpProblem lp;
        lp.a = Eigen::MatrixXd::Ones(rows + 1, cols);
        lp.a.topRows(rows) = v;
        lp.b = Eigen::VectorXd::Ones(rows + 1);
        lp.b.head(rows) = v * w;
        lp.c = Eigen::VectorXd::Zero(cols);
        const auto r = solve_lp(lp);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK((lp.a * r.x - lp.b).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(r.x.minCoeff() > -1e-12);
    }
}

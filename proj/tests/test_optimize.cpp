#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "bellbox/optimize.hpp"
#include "bellbox/rng.hpp"

using namespace bellbox;

TEST_CASE("counter-based draws are pure functions of their indices") {
    CHECK(chart_uniform(1, 2, 3) == chart_uniform(1, 2, 3));
    CHECK(chart_uniform(1, 2, 3) != chart_uniform(1, 2, 4));
    CHECK(chart_uniform(1, 2, 3) != chart_uniform(1, 3, 3));
    CHECK(chart_uniform(1, 2, 3) != chart_uniform(2, 2, 3));

    double sum = 0.0;
    std::set<std::uint64_t> seen;
    for (int r = 0; r < 100; ++r) {
        for (int p = 0; p < 10; ++p) {
            const double u = chart_uniform(42, r, p);
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
            sum += u;
            seen.insert(chart_bits(42, r, p));
        }
    }
    CHECK(seen.size() == 1000);             // no collisions across the grid
    CHECK(std::abs(sum / 1000.0 - 0.5) < 0.03);
}

TEST_CASE("algorithm names round trip") {
    for (Algorithm a :
         {Algorithm::DerivativeFreeSimplex, Algorithm::GradientDescentWithNumericGradient}) {
        const auto parsed = algorithm_from_string(to_string(a));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == a);
    }
    CHECK_FALSE(algorithm_from_string("newton").has_value());
}

namespace {
double shifted_quadratic(const Eigen::VectorXd& x) {
    double f = 0.0;
    for (int i = 0; i < x.size(); ++i) f += (i + 1) * (x(i) - 0.5 * i) * (x(i) - 0.5 * i);
    return f;
}

double rosenbrock(const Eigen::VectorXd& x) {
    return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
}
}  // namespace

TEST_CASE("simplex search on smooth objectives") {
    OptimizeOptions options;
    options.max_iterations = 4000;
    options.tolerance = 1e-14;
    const auto quad = nelder_mead(shifted_quadratic, Eigen::VectorXd::Zero(5), options);
    CHECK(quad.value < 1e-10);
    for (int i = 0; i < 5; ++i) CHECK(quad.x(i) == doctest::Approx(0.5 * i).epsilon(1e-4));

    Eigen::VectorXd start(2);
    start << -1.2, 1.0;
    const auto banana = nelder_mead(rosenbrock, start, options);
    CHECK(banana.value < 1e-9);
}

TEST_CASE("numeric gradient descent on smooth objectives") {
    OptimizeOptions options;
    options.algorithm = Algorithm::GradientDescentWithNumericGradient;
    options.max_iterations = 2000;
    options.tolerance = 1e-14;
    const auto quad = minimize(shifted_quadratic, Eigen::VectorXd::Zero(5), options);
    CHECK(quad.value < 1e-12);

    // Double-well in x: the x = 0.5 start must roll into the x = 1 well.
    const auto well = minimize(
        [](const Eigen::VectorXd& x) {
            return std::pow(x(0) * x(0) - 1.0, 2) + x(1) * x(1);
        },
        Eigen::VectorXd::Constant(2, 0.5), options);
    CHECK(well.value < 1e-10);
    CHECK(well.x(0) == doctest::Approx(1.0).epsilon(1e-4));
}

namespace {
// A rippled bowl with many local minima and a unique global one at the
// origin.
double rippled(const Eigen::VectorXd& x) {
    double f = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        f += x(i) * x(i) + 10.0 * (1.0 - std::cos(2.0 * x(i)));
    }
    return f;
}

StartDraw rippled_draw(std::uint64_t seed, int dim) {
    return [seed, dim](int restart) {
        Eigen::VectorXd x(dim);
        for (int p = 0; p < dim; ++p) x(p) = -5.0 + 10.0 * chart_uniform(seed, restart, p);
        return x;
    };
}
}  // namespace

TEST_CASE("multistart escapes local minima") {
    MultistartOptions options;
    options.restarts = 48;
    options.inner.max_iterations = 1500;
    options.inner.tolerance = 1e-14;
    const auto outcome = multistart_minimize(rippled, rippled_draw(9001, 3), options);
    CHECK(outcome.best_value < 1e-9);
    CHECK(outcome.restarts_used == 48);
    CHECK(outcome.records.size() == 48);
    CHECK(outcome.best_restart >= 0);

    // A single start from a bad well stays trapped, which is what makes the
    // restart schedule necessary.
    const auto trapped =
        nelder_mead(rippled, Eigen::VectorXd::Constant(3, 3.1), options.inner);
    CHECK(trapped.value > 1.0);
}

TEST_CASE("parallel and serial schedules are bit-identical") {
    MultistartOptions options;
    options.restarts = 32;
    options.inner.max_iterations = 800;
    const auto draw = rippled_draw(1234, 4);

    const auto parallel = multistart_minimize(rippled, draw, options);
    const auto serial = multistart_minimize_serial(rippled, draw, options);
    CHECK(parallel.best_value == serial.best_value);
    CHECK(parallel.best_restart == serial.best_restart);
    CHECK(parallel.restarts_used == serial.restarts_used);
    REQUIRE(parallel.best_x.size() == serial.best_x.size());
    for (int i = 0; i < parallel.best_x.size(); ++i) {
        CHECK(parallel.best_x(i) == serial.best_x(i));
    }
    REQUIRE(parallel.records.size() == serial.records.size());
    for (std::size_t i = 0; i < parallel.records.size(); ++i) {
        CHECK(parallel.records[i].restart == serial.records[i].restart);
        CHECK(parallel.records[i].value == serial.records[i].value);
    }
}

TEST_CASE("early stopping processes whole chunks deterministically") {
    MultistartOptions options;
    options.restarts = 64;
    options.chunk = 8;
    options.early_stop_below = 1e-6;
    options.inner.max_iterations = 1500;
    options.inner.tolerance = 1e-14;
    const auto draw = rippled_draw(77, 2);

    const auto parallel = multistart_minimize(rippled, draw, options);
    const auto serial = multistart_minimize_serial(rippled, draw, options);
    CHECK(parallel.best_value <= 1e-6);
    CHECK(parallel.restarts_used % 8 == 0);
    CHECK(parallel.restarts_used == serial.restarts_used);
    CHECK(parallel.best_value == serial.best_value);
    CHECK(parallel.best_restart == serial.best_restart);
}

TEST_CASE("the polish pass never loses ground") {
    MultistartOptions options;
    options.restarts = 8;
    options.inner.max_iterations = 60;  // deliberately under-converged
    const auto outcome = multistart_minimize(rippled, rippled_draw(5, 3), options);
    double raw_best = outcome.records.front().value;
    for (const auto& r : outcome.records) raw_best = std::min(raw_best, r.value);
    CHECK(outcome.best_value <= raw_best);
}

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bellbox {

using Objective = std::function<double(const Eigen::VectorXd&)>;

enum class Algorithm { DerivativeFreeSimplex, GradientDescentWithNumericGradient };

std::optional<Algorithm> algorithm_from_string(std::string_view name);
std::string to_string(Algorithm algorithm);

struct OptimizeOptions {
    Algorithm algorithm = Algorithm::DerivativeFreeSimplex;
    int max_iterations = 2000;
    double initial_step = 0.5;
    // Stop once the simplex (or the gradient step) has collapsed below this
    // scale; also bounds the achievable objective resolution.
    double tolerance = 1e-12;
};

struct OptimizeOutcome {
    Eigen::VectorXd x;
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

OptimizeOutcome nelder_mead(const Objective& objective, Eigen::VectorXd start,
                            const OptimizeOptions& options);
OptimizeOutcome numeric_gradient_descent(const Objective& objective, Eigen::VectorXd start,
                                         const OptimizeOptions& options);
OptimizeOutcome minimize(const Objective& objective, Eigen::VectorXd start,
                         const OptimizeOptions& options);

// Restart starting points are a pure function of the restart index, so the
// schedule below is reproducible under any thread count.
using StartDraw = std::function<Eigen::VectorXd(int restart)>;

struct MultistartOptions {
    OptimizeOptions inner;
    int restarts = 64;
    // 0 uses every available thread, 1 runs the serial reference path.
    int threads = 0;
    // When set, restarts run in fixed chunks of `chunk` and the schedule
    // stops after the first chunk containing a value <= early_stop_below.
    // Results are identical for every thread count either way: each chunk
    // always completes in full and the winner is the lowest restart index
    // among minimal values.
    double early_stop_below = -std::numeric_limits<double>::infinity();
    int chunk = 8;
    // Refine the winning restart with a small-step simplex pass.
    bool polish = true;
    double polish_step = 0.02;
};

struct RestartRecord {
    int restart = 0;
    double value = std::numeric_limits<double>::infinity();
    Eigen::VectorXd x;
};

struct MultistartOutcome {
    Eigen::VectorXd best_x;
    double best_value = std::numeric_limits<double>::infinity();
    int best_restart = -1;
    int restarts_used = 0;
    bool polished = false;
    std::vector<RestartRecord> records;
};

MultistartOutcome multistart_minimize(const Objective& objective, const StartDraw& draw,
                                      const MultistartOptions& options);

// Plain-loop twin of multistart_minimize used as the correctness reference;
// bit-identical outcomes are a test invariant.
MultistartOutcome multistart_minimize_serial(const Objective& objective, const StartDraw& draw,
                                             const MultistartOptions& options);

}  // namespace bellbox

// Times the OpenMP multistart schedule against the serial reference loop on a
// representative workload: the nearest-point search from the no-signalling
// vertex toward the quantum set. Run with OMP_NUM_THREADS to vary the pool.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "bellbox/correlator.hpp"
#include "bellbox/optimize.hpp"
#include "bellbox/rng.hpp"
#include "bellbox/solver.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Workload {
    bellbox::Objective objective;
    bellbox::StartDraw draw;
    int dim = 0;
};

// Same parameterization the membership solver uses: one two-qubit component,
// general binary measurements, correlator-space distance to the target.
Workload make_workload(const bellbox::ProbBox& target, std::uint64_t seed) {
    const auto target_stats = bellbox::correlators_from_probs(target);
    const int dim = 17;
    auto objective = [target_stats](const Eigen::VectorXd& x) {
        auto square = [](double u) {
            const double s = std::sin(u);
            return (1.0 + s) / 2.0;
        };
        const double alpha = square(x[0]) * M_PI;
        bellbox::QubitRealization realization;
        realization.state = bellbox::SchmidtState{alpha};
        for (int party = 0; party < 2; ++party) {
            for (int input = 0; input < 2; ++input) {
                const int base = 1 + 4 * (party * 2 + input);
                bellbox::BinaryMeasurement m;
                m.theta = square(x[base]) * M_PI;
                m.phi = x[base + 1];
                m.eta = square(x[base + 2]);
                m.kappa = (2.0 * square(x[base + 3]) - 1.0) * (1.0 - m.eta);
                realization.measurements[party * 2 + input] = m;
            }
        }
        const auto stats = bellbox::qubit_box_analytic(realization);
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double dm = stats.marginals[i] - target_stats.marginals[i];
            const double dc = stats.correlators[i] - target_stats.correlators[i];
            sum += dm * dm + dc * dc;
        }
        return std::sqrt(sum);
    };
    auto draw = [seed, dim](int restart) {
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) {
            x[i] = (bellbox::chart_uniform(seed, restart, i) * 2.0 - 1.0) * 2.0;
        }
        return x;
    };
    return {std::move(objective), std::move(draw), dim};
}

}  // namespace

int main() {
    const auto target = bellbox::probs_from_correlators(
        bellbox::canonical_box(bellbox::BoxLabel::PTB));
    const auto workload = make_workload(target, 2026);

    std::printf("threads available: %d\n", omp_get_max_threads());
    std::printf("%10s %14s %14s %10s %22s\n", "restarts", "parallel [s]", "serial [s]",
                "speedup", "best value (both)");

    for (const int restarts : {32, 128, 512}) {
        bellbox::MultistartOptions options;
        options.restarts = restarts;
        options.inner.max_iterations = 2000;

        options.threads = 0;
        auto t0 = Clock::now();
        const auto parallel =
            bellbox::multistart_minimize(workload.objective, workload.draw, options);
        const double parallel_s = seconds_since(t0);

        t0 = Clock::now();
        const auto serial =
            bellbox::multistart_minimize_serial(workload.objective, workload.draw, options);
        const double serial_s = seconds_since(t0);

        const bool identical = parallel.best_value == serial.best_value &&
                               parallel.best_restart == serial.best_restart;
        std::printf("%10d %14.3f %14.3f %9.2fx %18.6e %s\n", restarts, parallel_s,
                    serial_s, serial_s / parallel_s, parallel.best_value,
                    identical ? "(identical)" : "(MISMATCH)");
        if (!identical) return 1;
    }
    std::printf("note: speedup tracks the available cores; on one core the two "
                "paths should tie.\n");
    return 0;
}

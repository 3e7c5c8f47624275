#include "bellbox/optimize.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bellbox {

std::optional<Algorithm> algorithm_from_string(std::string_view name) {
    if (name == "derivative-free-simplex") return Algorithm::DerivativeFreeSimplex;
    if (name == "gradient-descent-with-numeric-gradient") {
        return Algorithm::GradientDescentWithNumericGradient;
    }
    return std::nullopt;
}

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::DerivativeFreeSimplex: return "derivative-free-simplex";
        case Algorithm::GradientDescentWithNumericGradient:
            return "gradient-descent-with-numeric-gradient";
    }
    return "?";
}

OptimizeOutcome nelder_mead(const Objective& objective, Eigen::VectorXd start,
                            const OptimizeOptions& options) {
    const int n = static_cast<int>(start.size());
    std::vector<Eigen::VectorXd> xs(n + 1, start);
    std::vector<double> fs(n + 1);
    for (int i = 0; i < n; ++i) xs[i + 1](i) += options.initial_step;
    for (int i = 0; i <= n; ++i) fs[i] = objective(xs[i]);

    std::vector<int> order(n + 1);
    OptimizeOutcome outcome;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], second_worst = order[n - 1], worst = order[n];

        double diameter = 0.0;
        for (int i = 0; i <= n; ++i) {
            diameter = std::max(diameter, (xs[i] - xs[best]).lpNorm<Eigen::Infinity>());
        }
        if (fs[worst] - fs[best] < options.tolerance || diameter < options.tolerance) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i) {
            if (i != worst) centroid += xs[i];
        }
        centroid /= n;

        const Eigen::VectorXd away = centroid - xs[worst];
        const Eigen::VectorXd reflected = centroid + away;
        const double f_reflected = objective(reflected);
        if (f_reflected < fs[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * away;
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                xs[worst] = expanded;
                fs[worst] = f_expanded;
            } else {
                xs[worst] = reflected;
                fs[worst] = f_reflected;
            }
        } else if (f_reflected < fs[second_worst]) {
            xs[worst] = reflected;
            fs[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fs[worst];
            const Eigen::VectorXd contracted =
                outside ? Eigen::VectorXd(centroid + 0.5 * away)
                        : Eigen::VectorXd(centroid - 0.5 * away);
            const double f_contracted = objective(contracted);
            if (f_contracted < std::min(f_reflected, fs[worst])) {
                xs[worst] = contracted;
                fs[worst] = f_contracted;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    xs[i] = xs[best] + 0.5 * (xs[i] - xs[best]);
                    fs[i] = objective(xs[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i) {
        if (fs[i] < fs[best]) best = i;
    }
    outcome.x = xs[best];
    outcome.value = fs[best];
    outcome.iterations = iter;
    return outcome;
}

OptimizeOutcome numeric_gradient_descent(const Objective& objective, Eigen::VectorXd start,
                                         const OptimizeOptions& options) {
    const int n = static_cast<int>(start.size());
    Eigen::VectorXd x = std::move(start);
    double fx = objective(x);
    double step = options.initial_step;

    OptimizeOutcome outcome;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        Eigen::VectorXd grad(n);
        for (int i = 0; i < n; ++i) {
            const double h = 1e-7 * std::max(1.0, std::abs(x(i)));
            Eigen::VectorXd xp = x, xm = x;
            xp(i) += h;
            xm(i) -= h;
            grad(i) = (objective(xp) - objective(xm)) / (2.0 * h);
        }
        const double gnorm = grad.norm();
        if (gnorm < 1e-10) break;

        // Backtracking line search with an Armijo condition; the accepted
        // step seeds the next iteration so well-scaled regions stay fast.
        bool moved = false;
        double t = step;
        for (int back = 0; back < 50; ++back) {
            const Eigen::VectorXd candidate = x - t * grad;
            const double fc = objective(candidate);
            if (fc <= fx - 1e-4 * t * gnorm * gnorm) {
                x = candidate;
                fx = fc;
                step = std::min(t * 2.0, 1e3);
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved || t * gnorm < options.tolerance) break;
    }
    outcome.x = std::move(x);
    outcome.value = fx;
    outcome.iterations = iter;
    return outcome;
}

OptimizeOutcome minimize(const Objective& objective, Eigen::VectorXd start,
                         const OptimizeOptions& options) {
    switch (options.algorithm) {
        case Algorithm::GradientDescentWithNumericGradient:
            return numeric_gradient_descent(objective, std::move(start), options);
        case Algorithm::DerivativeFreeSimplex: break;
    }
    return nelder_mead(objective, std::move(start), options);
}

namespace {

MultistartOutcome run_multistart(const Objective& objective, const StartDraw& draw,
                                 const MultistartOptions& options, bool parallel) {
    const bool early_stop = std::isfinite(options.early_stop_below);
    const int chunk = early_stop ? std::max(1, options.chunk) : std::max(1, options.restarts);
    const int threads = options.threads == 0 ? omp_get_max_threads() : options.threads;

    MultistartOutcome outcome;
    outcome.records.reserve(options.restarts);
    for (int begin = 0; begin < options.restarts; begin += chunk) {
        const int end = std::min(begin + chunk, options.restarts);
        std::vector<RestartRecord> block(end - begin);
        // Every chunk member runs to completion and lands in its own slot,
        // so the merge below is independent of scheduling order.
        if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
            for (int i = begin; i < end; ++i) {
                const auto r = minimize(objective, draw(i), options.inner);
                block[i - begin] = RestartRecord{i, r.value, r.x};
            }
        } else {
            for (int i = begin; i < end; ++i) {
                const auto r = minimize(objective, draw(i), options.inner);
                block[i - begin] = RestartRecord{i, r.value, r.x};
            }
        }
        for (auto& record : block) {
            if (record.value < outcome.best_value) {
                outcome.best_value = record.value;
                outcome.best_x = record.x;
                outcome.best_restart = record.restart;
            }
            outcome.records.push_back(std::move(record));
        }
        outcome.restarts_used = end;
        if (early_stop && outcome.best_value <= options.early_stop_below) break;
    }

    if (options.polish && outcome.best_restart >= 0) {
        OptimizeOptions polish = options.inner;
        polish.algorithm = Algorithm::DerivativeFreeSimplex;
        polish.initial_step = options.polish_step;
        const auto refined = nelder_mead(objective, outcome.best_x, polish);
        if (refined.value < outcome.best_value) {
            outcome.best_value = refined.value;
            outcome.best_x = refined.x;
            outcome.polished = true;
        }
    }
    return outcome;
}

}  // namespace

MultistartOutcome multistart_minimize(const Objective& objective, const StartDraw& draw,
                                      const MultistartOptions& options) {
    return run_multistart(objective, draw, options, options.threads != 1);
}

MultistartOutcome multistart_minimize_serial(const Objective& objective, const StartDraw& draw,
                                             const MultistartOptions& options) {
    return run_multistart(objective, draw, options, false);
}

}  // namespace bellbox

#include "bellbox/local_polytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "bellbox/linprog.hpp"

namespace bellbox {

namespace {

Eigen::MatrixXd vertex_matrix(const LocalVertices& vertices) {
    const int f = static_cast<int>(free_parameters(vertices.boxes.front()).size());
    Eigen::MatrixXd v(f, vertices.boxes.size());
    for (std::size_t j = 0; j < vertices.boxes.size(); ++j) {
        const auto params = free_parameters(vertices.boxes[j]);
        for (int i = 0; i < f; ++i) v(i, j) = params[i];
    }
    return v;
}

Eigen::VectorXd to_vector(const std::vector<double>& values) {
    return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

// Feasibility of  V w = q, sum w = 1, w >= 0  restricted to the listed
// columns; returns the weights on success.
std::optional<Eigen::VectorXd> decomposition_over(const Eigen::MatrixXd& v,
                                                  const Eigen::VectorXd& q,
                                                  const std::vector<int>& columns, double tol) {
    const int f = static_cast<int>(v.rows());
    const int k = static_cast<int>(columns.size());
    LpProblem lp;
    lp.a = Eigen::MatrixXd::Ones(f + 1, k);
    for (int j = 0; j < k; ++j) lp.a.col(j).head(f) = v.col(columns[j]);
    lp.b = Eigen::VectorXd::Ones(f + 1);
    lp.b.head(f) = q;
    lp.c = Eigen::VectorXd::Zero(k);
    const LpResult result = solve_lp(lp, tol);
    if (result.status != LpStatus::Optimal) return std::nullopt;
    return result.x;
}

}  // namespace

LocalMembership local_membership_lp(const ProbBox& box, double tol) {
    const auto vertices = enumerate_local_vertices(box.scenario());
    const Eigen::MatrixXd v = vertex_matrix(vertices);
    const Eigen::VectorXd q = to_vector(free_parameters(box));
    const int f = static_cast<int>(v.rows());
    const int k = static_cast<int>(v.cols());

    LocalMembership membership;
    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 0);
    if (const auto w = decomposition_over(v, q, all, tol)) {
        membership.is_local = true;
        membership.weights.assign(w->data(), w->data() + w->size());
        return membership;
    }

    // Separating functional: max y.q - t subject to y.V_j <= t for every
    // vertex and |y_i| <= 1. Variables (all nonnegative): y+, y-, t+, t-,
    // vertex slacks s, bound slacks u, with y = y+ - y-, t = t+ - t-.
    const int ny = 2 * f, nt = 2;
    const int cols = ny + nt + k + f;
    LpProblem lp;
    lp.a = Eigen::MatrixXd::Zero(k + f, cols);
    lp.b = Eigen::VectorXd::Zero(k + f);
    lp.c = Eigen::VectorXd::Zero(cols);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < f; ++i) {
            lp.a(j, i) = v(i, j);
            lp.a(j, f + i) = -v(i, j);
        }
        lp.a(j, ny) = -1.0;
        lp.a(j, ny + 1) = 1.0;
        lp.a(j, ny + nt + j) = 1.0;
    }
    for (int i = 0; i < f; ++i) {
        lp.a(k + i, i) = 1.0;
        lp.a(k + i, f + i) = 1.0;
        lp.a(k + i, ny + nt + k + i) = 1.0;
        lp.b(k + i) = 1.0;
    }
    for (int i = 0; i < f; ++i) {
        lp.c(i) = -q(i);
        lp.c(f + i) = q(i);
    }
    lp.c(ny) = 1.0;
    lp.c(ny + 1) = -1.0;

    const LpResult result = solve_lp(lp, tol);
    if (result.status == LpStatus::Optimal) {
        membership.witness.resize(f);
        for (int i = 0; i < f; ++i) membership.witness[i] = result.x(i) - result.x(f + i);
        // Re-verify by direct inner products.
        const Eigen::VectorXd y = to_vector(membership.witness);
        membership.witness_value = y.dot(q);
        membership.witness_threshold = (v.transpose() * y).maxCoeff();
    }
    return membership;
}

double local_distance(const ProbBox& box, int max_iterations) {
    const auto vertices = enumerate_local_vertices(box.scenario());
    const Eigen::MatrixXd v = vertex_matrix(vertices);
    const Eigen::VectorXd q = to_vector(free_parameters(box));
    const int k = static_cast<int>(v.cols());

    // Frank-Wolfe with away steps on min ||V w - q||^2 over the simplex.
    Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
    w(0) = 1.0;
    Eigen::VectorXd point = v.col(0);
    for (int iter = 0; iter < max_iterations; ++iter) {
        const Eigen::VectorXd grad = v.transpose() * (point - q);
        int fw = 0, away = -1;
        for (int j = 1; j < k; ++j) {
            if (grad(j) < grad(fw)) fw = j;
        }
        for (int j = 0; j < k; ++j) {
            if (w(j) > 1e-14 && (away < 0 || grad(j) > grad(away))) away = j;
        }
        const Eigen::VectorXd d_fw = v.col(fw) - point;
        const Eigen::VectorXd d_aw = point - v.col(away);
        const double gap_fw = (point - q).dot(d_fw);
        const double gap_aw = (point - q).dot(d_aw);
        if (std::min(gap_fw, gap_aw) > -1e-16) break;
        const bool use_away = away != fw && gap_aw < gap_fw;
        const Eigen::VectorXd dir = use_away ? d_aw : d_fw;
        const double gamma_max = use_away ? w(away) / (1.0 - w(away) + 1e-300) : 1.0;
        const double denom = dir.squaredNorm();
        if (denom < 1e-30) break;
        double gamma = -((point - q).dot(dir)) / denom;
        gamma = std::clamp(gamma, 0.0, gamma_max);
        if (gamma <= 0.0) break;
        if (use_away) {
            w *= (1.0 + gamma);
            w(away) -= gamma;
        } else {
            w *= (1.0 - gamma);
            w(fw) += gamma;
        }
        point += gamma * dir;
    }
    return (point - q).norm();
}

std::optional<SparseDecomposition> sparse_local_decomposition(const ProbBox& box, int max_support,
                                                              double tol) {
    const auto vertices = enumerate_local_vertices(box.scenario());
    const Eigen::MatrixXd v = vertex_matrix(vertices);
    const Eigen::VectorXd q = to_vector(free_parameters(box));
    const int k = static_cast<int>(v.cols());

    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 0);
    auto solved = decomposition_over(v, q, all, tol);
    if (!solved) return std::nullopt;

    std::vector<int> support;
    std::vector<double> weights;
    auto refresh = [&](const std::vector<int>& columns, const Eigen::VectorXd& w) {
        support.clear();
        weights.clear();
        for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
            if (w(j) > tol) {
                support.push_back(columns[j]);
                weights.push_back(w(j));
            }
        }
    };
    refresh(all, *solved);

    // Greedy: repeatedly drop the lightest vertex whose removal keeps the
    // system feasible.
    bool shrunk = true;
    while (static_cast<int>(support.size()) > max_support && shrunk) {
        shrunk = false;
        std::vector<int> order(support.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return weights[a] < weights[b]; });
        for (int candidate : order) {
            std::vector<int> reduced;
            for (int j = 0; j < static_cast<int>(support.size()); ++j) {
                if (j != candidate) reduced.push_back(support[j]);
            }
            if (auto w = decomposition_over(v, q, reduced, tol)) {
                refresh(reduced, *w);
                shrunk = true;
                break;
            }
        }
    }

    // Exhaustive fallback over all supports of exactly max_support vertices;
    // worthwhile only at the small sizes this project works with.
    if (static_cast<int>(support.size()) > max_support && k <= 24 && max_support <= 6) {
        std::vector<int> pick(max_support);
        for (int i = 0; i < max_support; ++i) pick[i] = i;
        while (true) {
            if (auto w = decomposition_over(v, q, pick, tol)) {
                refresh(pick, *w);
                break;
            }
            int i = max_support - 1;
            while (i >= 0 && pick[i] == k - max_support + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < max_support; ++j) pick[j] = pick[j - 1] + 1;
        }
    }

    if (static_cast<int>(support.size()) > max_support) return std::nullopt;
    // Renormalize away the tol-level truncation.
    double sum = 0.0;
    for (double w : weights) sum += w;
    for (double& w : weights) w /= sum;
    SparseDecomposition out;
    out.vertex_indices = std::move(support);
    out.weights = std::move(weights);
    return out;
}

std::optional<LHVModel> local_product_model(const ProbBox& box, double tol) {
    const auto membership = local_membership_lp(box, tol);
    if (!membership.is_local) return std::nullopt;
    const auto vertices = enumerate_local_vertices(box.scenario());
    const BellScenario& sc = box.scenario();
    const int n = sc.parties;

    // Key = response functions of parties 1..n-1.
    std::map<std::vector<std::vector<int>>, std::vector<std::pair<int, double>>> groups;
    for (std::size_t j = 0; j < membership.weights.size(); ++j) {
        if (membership.weights[j] <= tol) continue;
        std::vector<std::vector<int>> key(vertices.strategies[j].outputs.begin() + 1,
                                          vertices.strategies[j].outputs.end());
        groups[std::move(key)].emplace_back(static_cast<int>(j), membership.weights[j]);
    }

    LHVModel model;
    double total = 0.0;
    for (const auto& [key, members] : groups) {
        double group_weight = 0.0;
        for (const auto& [j, w] : members) group_weight += w;
        total += group_weight;
        model.weights.push_back(group_weight);

        std::vector<std::vector<std::vector<double>>> per_party(n);
        // Party 0: stochastic response averaged over the group.
        per_party[0].assign(sc.inputs, std::vector<double>(sc.outputs, 0.0));
        for (const auto& [j, w] : members) {
            for (int x = 0; x < sc.inputs; ++x) {
                per_party[0][x][vertices.strategies[j].outputs[0][x]] += w / group_weight;
            }
        }
        // Parties 1..n-1: the shared deterministic functions.
        for (int p = 1; p < n; ++p) {
            per_party[p].assign(sc.inputs, std::vector<double>(sc.outputs, 0.0));
            for (int x = 0; x < sc.inputs; ++x) per_party[p][x][key[p - 1][x]] = 1.0;
        }
        model.responses.push_back(std::move(per_party));
    }
    for (double& w : model.weights) w /= total;
    validate(model, sc);
    return model;
}

LHVModel decomposition_model(const SparseDecomposition& decomposition,
                             const BellScenario& scenario) {
    const auto vertices = enumerate_local_vertices(scenario);
    std::vector<DeterministicStrategy> strategies;
    strategies.reserve(decomposition.vertex_indices.size());
    for (int index : decomposition.vertex_indices) {
        strategies.push_back(vertices.strategies.at(index));
    }
    return LHVModel::from_deterministic(decomposition.weights, strategies, scenario);
}

}  // namespace bellbox

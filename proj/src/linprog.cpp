#include "bellbox/linprog.hpp"

#include <cmath>
#include <vector>

namespace bellbox {

namespace {

// Tableau rows 0..m-1 hold [B^-1 A | B^-1 b]; row m holds the reduced cost
// row and, in its last entry, minus the current objective.
struct Tableau {
    Eigen::MatrixXd t;
    std::vector<int> basis;
    double tol;

    int rows() const { return static_cast<int>(t.rows()) - 1; }
    int cols() const { return static_cast<int>(t.cols()) - 1; }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int r = 0; r < static_cast<int>(t.rows()); ++r) {
            if (r != row && t(r, col) != 0.0) t.row(r) -= t(r, col) * t.row(row);
        }
        basis[row] = col;
    }

    // Bland's rule: entering column is the lowest index with negative
    // reduced cost; leaving row breaks ratio ties by lowest basis index.
    // Returns false at optimality, throws nothing; unbounded is signalled
    // through the out-parameter.
    bool step(bool& unbounded) {
        const int m = rows(), n = cols();
        int enter = -1;
        for (int j = 0; j < n; ++j) {
            if (t(m, j) < -tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return false;
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) > tol) {
                const double ratio = t(i, n) / t(i, enter);
                if (leave < 0 || ratio < best_ratio - tol ||
                    (ratio < best_ratio + tol && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) {
            unbounded = true;
            return false;
        }
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

LpResult solve_lp(const LpProblem& problem, double tol) {
    const int m = static_cast<int>(problem.a.rows());
    const int n = static_cast<int>(problem.a.cols());

    // Phase 1: minimize the sum of one artificial variable per row.
    Tableau tab;
    tab.tol = tol;
    tab.basis.resize(m);
    tab.t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    for (int i = 0; i < m; ++i) {
        const double flip = problem.b(i) < 0.0 ? -1.0 : 1.0;
        tab.t.block(i, 0, 1, n) = flip * problem.a.row(i);
        tab.t(i, n + i) = 1.0;
        tab.t(i, n + m) = flip * problem.b(i);
        tab.basis[i] = n + i;
    }
    // Reduced costs of the artificial objective: subtract every row.
    for (int i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);
    for (int i = 0; i < m; ++i) tab.t(m, n + i) = 0.0;

    bool unbounded = false;
    while (tab.step(unbounded)) {
    }

    LpResult result;
    if (-tab.t(m, n + m) > tol * std::max(1.0, problem.b.cwiseAbs().maxCoeff())) {
        result.status = LpStatus::Infeasible;
        return result;
    }

    // Drive any artificial still in the basis out through a degenerate
    // pivot; a row with no real pivot column is redundant and can stay (its
    // artificial remains at value zero and never re-enters: the column is
    // excluded from phase 2).
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] >= n) {
            for (int j = 0; j < n; ++j) {
                if (std::abs(tab.t(i, j)) > tol) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
    }

    // Phase 2: install the real cost row over the same basis.
    tab.t.row(m).setZero();
    tab.t.block(m, 0, 1, n) = problem.c.transpose();
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) tab.t.row(m) -= problem.c(tab.basis[i]) * tab.t.row(i);
    }
    // Freeze artificial columns so they cannot re-enter.
    for (int i = 0; i < m; ++i) tab.t.col(n + i).setZero();
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] >= n) tab.t(i, tab.basis[i]) = 1.0;
    }

    unbounded = false;
    while (tab.step(unbounded)) {
    }
    if (unbounded) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) result.x(tab.basis[i]) = tab.t(i, n + m);
    }
    result.objective = problem.c.dot(result.x);
    return result;
}

}  // namespace bellbox

#pragma once

#include <Eigen/Dense>

namespace bellbox {

// Minimal dense linear programming layer: min c.x subject to A x = b,
// x >= 0, solved by two-phase primal simplex with Bland's rule (so it
// terminates on degenerate problems). Problem sizes here are tiny (tens of
// rows), so a dense tableau is the right tool.
struct LpProblem {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
};

LpResult solve_lp(const LpProblem& problem, double tol = 1e-9);

}  // namespace bellbox

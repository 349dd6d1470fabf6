#pragma once

#include <string>

#include <Eigen/Dense>

namespace isoimp {

/// Dense linear program:
///   minimize c'x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lower <= x <= upper.
struct LpProblem {
    Eigen::VectorXd c;
    Eigen::MatrixXd a_eq;
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd a_ub;
    Eigen::VectorXd b_ub;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    /// Plain-text tableau dump for debugging.
    std::string to_tableau_string() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    Eigen::VectorXd x;
};

/// Two-phase dense simplex with Bland's rule; intended for small problems
/// (dimension <= 32, constraints <= 96).
LpResult solve_lp(const LpProblem& p);

}  // namespace isoimp

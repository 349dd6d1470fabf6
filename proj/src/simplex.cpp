#include "isoimp/simplex.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace isoimp {

namespace {

constexpr double kPivotTol = 1e-12;

// Tableau-based simplex over equality rows with nonnegative variables and
// nonnegative right-hand sides. Bland's rule prevents cycling.
struct Tableau {
    Eigen::MatrixXd t;        // m x (n + 1), last column is the rhs
    std::vector<int> basis;   // basic variable per row
    Eigen::VectorXd cost;     // current objective row (reduced costs built on demand)

    int rows() const { return static_cast<int>(t.rows()); }
    int cols() const { return static_cast<int>(t.cols()) - 1; }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int i = 0; i < rows(); ++i) {
            if (i != row && std::abs(t(i, col)) > 0.0) {
                t.row(i) -= t(i, col) * t.row(row);
            }
        }
        basis[row] = col;
    }

    // minimize cost'x from the current basis; returns false if unbounded
    bool optimize(const Eigen::VectorXd& c) {
        cost = c;
        while (true) {
            Eigen::VectorXd reduced = cost;
            for (int i = 0; i < rows(); ++i) {
                reduced -= cost[basis[i]] * t.row(i).head(cols()).transpose();
            }
            int enter = -1;
            for (int j = 0; j < cols(); ++j) {
                if (reduced[j] < -kPivotTol) {
                    enter = j;  // Bland: smallest index
                    break;
                }
            }
            if (enter < 0) return true;

            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < rows(); ++i) {
                const double aij = t(i, enter);
                if (aij > kPivotTol) {
                    const double ratio = t(i, cols()) / aij;
                    if (leave < 0 || ratio < best_ratio - kPivotTol ||
                        (std::abs(ratio - best_ratio) <= kPivotTol &&
                         basis[i] < basis[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
    }

    double objective(const Eigen::VectorXd& c) const {
        double v = 0.0;
        for (int i = 0; i < rows(); ++i) v += c[basis[i]] * t(i, cols());
        return v;
    }
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
    const int n = static_cast<int>(p.c.size());
    const int m_eq = static_cast<int>(p.b_eq.size());
    const int m_ub = static_cast<int>(p.b_ub.size());

    // shift x = lower + z with z >= 0; upper bounds become extra <= rows
    int n_bounded = 0;
    for (int j = 0; j < n; ++j) {
        if (std::isfinite(p.upper[j])) ++n_bounded;
    }
    const int m = m_eq + m_ub + n_bounded;
    const int n_slack = m_ub + n_bounded;
    const int n_total = n + n_slack + m;  // structural + slack + artificial

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n_total);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);

    int row = 0;
    for (int i = 0; i < m_eq; ++i, ++row) {
        a.row(row).head(n) = p.a_eq.row(i);
        b[row] = p.b_eq[i] - p.a_eq.row(i).dot(p.lower);
    }
    for (int i = 0; i < m_ub; ++i, ++row) {
        a.row(row).head(n) = p.a_ub.row(i);
        a(row, n + i) = 1.0;
        b[row] = p.b_ub[i] - p.a_ub.row(i).dot(p.lower);
    }
    int bnd = 0;
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(p.upper[j])) continue;
        a(row, j) = 1.0;
        a(row, n + m_ub + bnd) = 1.0;
        b[row] = p.upper[j] - p.lower[j];
        ++bnd;
        ++row;
    }

    // nonnegative rhs, then one artificial per row
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0.0) {
            a.row(i) *= -1.0;
            b[i] = -b[i];
        }
        a(i, n + n_slack + i) = 1.0;
    }

    Tableau tab;
    tab.t.resize(m, n_total + 1);
    tab.t.leftCols(n_total) = a;
    tab.t.col(n_total) = b;
    tab.basis.resize(m);
    for (int i = 0; i < m; ++i) tab.basis[i] = n + n_slack + i;

    // phase 1: drive the artificials to zero
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n_total);
    phase1.tail(m).setOnes();
    if (!tab.optimize(phase1)) {
        return {LpStatus::Infeasible, 0.0, {}};
    }
    if (tab.objective(phase1) > 1e-8) {
        return {LpStatus::Infeasible, 0.0, {}};
    }
    // pivot any artificial still basic out of the basis
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] >= n + n_slack) {
            int enter = -1;
            for (int j = 0; j < n + n_slack; ++j) {
                if (std::abs(tab.t(i, j)) > kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter >= 0) tab.pivot(i, enter);
        }
    }

    // phase 2 with the artificial columns frozen
    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n_total);
    phase2.head(n) = p.c;
    for (int i = 0; i < m; ++i) {
        for (int j = n + n_slack; j < n_total; ++j) tab.t(i, j) = 0.0;
    }
    if (!tab.optimize(phase2)) {
        return {LpStatus::Unbounded, 0.0, {}};
    }

    Eigen::VectorXd z = Eigen::VectorXd::Zero(n_total);
    for (int i = 0; i < m; ++i) z[tab.basis[i]] = tab.t(i, n_total);
    LpResult res;
    res.status = LpStatus::Optimal;
    res.x = p.lower + z.head(n);
    res.value = p.c.dot(res.x);
    return res;
}

std::string LpProblem::to_tableau_string() const {
    std::ostringstream os;
    const int n = static_cast<int>(c.size());
    os << "minimize:";
    for (int j = 0; j < n; ++j) os << ' ' << c[j];
    os << "\n";
    for (int i = 0; i < b_eq.size(); ++i) {
        os << "eq :";
        for (int j = 0; j < n; ++j) os << ' ' << a_eq(i, j);
        os << " = " << b_eq[i] << "\n";
    }
    for (int i = 0; i < b_ub.size(); ++i) {
        os << "ub :";
        for (int j = 0; j < n; ++j) os << ' ' << a_ub(i, j);
        os << " <= " << b_ub[i] << "\n";
    }
    os << "lower:";
    for (int j = 0; j < n; ++j) os << ' ' << lower[j];
    os << "\nupper:";
    for (int j = 0; j < n; ++j) os << ' ' << upper[j];
    os << "\n";
    return os.str();
}

}  // namespace isoimp

#pragma once

#include <Eigen/Dense>

namespace oplat {

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    double value = 0.0;
    Eigen::VectorXd x;

    bool ok() const { return status == Status::optimal; }
};

// minimize c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
// Dense two-phase simplex with Bland's rule; sized for the small feasibility
// problems the lattice code produces (tens of variables).
LpResult lp_minimize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A_ub,
                     const Eigen::VectorXd& b_ub, const Eigen::MatrixXd& A_eq,
                     const Eigen::VectorXd& b_eq, double eps = 1e-11);

}  // namespace oplat

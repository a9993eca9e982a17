#include "oplat/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oplat {

namespace {

struct Tableau {
    Eigen::MatrixXd T;  // rows 0..m-1 constraints, row m objective; last col rhs
    std::vector<int> basis;
    int m = 0, n = 0;

    void pivot(int r, int c) {
        T.row(r) /= T(r, c);
        for (int i = 0; i <= m; ++i) {
            if (i == r) continue;
            double f = T(i, c);
            if (f != 0.0) T.row(i) -= f * T.row(r);
        }
        basis[r] = c;
    }

    // Returns false when unbounded.
    bool run(int ncols, double eps) {
        for (int guard = 0; guard < 50000; ++guard) {
            int enter = -1;
            for (int j = 0; j < ncols; ++j)
                if (T(m, j) < -eps) { enter = j; break; }
            if (enter < 0) return true;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (T(i, enter) > eps) {
                    double ratio = T(i, n) / T(i, enter);
                    if (ratio < best - 1e-14 ||
                        (std::abs(ratio - best) <= 1e-14 && leave >= 0 && basis[i] < basis[leave])) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex: iteration guard exceeded");
    }
};

}  // namespace

LpResult lp_minimize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A_ub, const Eigen::VectorXd& b_ub,
                     const Eigen::MatrixXd& A_eq, const Eigen::VectorXd& b_eq, double eps) {
    const int nv = static_cast<int>(c.size());
    const int mu = static_cast<int>(A_ub.rows());
    const int me = static_cast<int>(A_eq.rows());
    if ((mu > 0 && A_ub.cols() != nv) || (me > 0 && A_eq.cols() != nv))
        throw std::invalid_argument("lp_minimize: column count mismatch");

    Tableau tb;
    tb.m = mu + me;
    const int ns = mu;
    const int na = tb.m;
    tb.n = nv + ns + na;
    tb.T = Eigen::MatrixXd::Zero(tb.m + 1, tb.n + 1);
    tb.basis.assign(tb.m, 0);

    for (int i = 0; i < mu; ++i) {
        double sgn = b_ub(i) < 0 ? -1.0 : 1.0;
        tb.T.row(i).head(nv) = sgn * A_ub.row(i);
        tb.T(i, nv + i) = sgn;
        tb.T(i, tb.n) = sgn * b_ub(i);
    }
    for (int i = 0; i < me; ++i) {
        int r = mu + i;
        double sgn = b_eq(i) < 0 ? -1.0 : 1.0;
        tb.T.row(r).head(nv) = sgn * A_eq.row(i);
        tb.T(r, tb.n) = sgn * b_eq(i);
    }
    for (int i = 0; i < tb.m; ++i) {
        tb.T(i, nv + ns + i) = 1.0;
        tb.basis[i] = nv + ns + i;
    }

    // phase 1: minimize the artificial sum
    for (int i = 0; i < tb.m; ++i) tb.T.row(tb.m) -= tb.T.row(i);
    for (int i = 0; i < tb.m; ++i) tb.T(tb.m, nv + ns + i) = 0.0;
    tb.run(tb.n, eps);

    LpResult res;
    if (-tb.T(tb.m, tb.n) > 1e-8) {
        res.status = LpResult::Status::infeasible;
        return res;
    }
    // drive artificials out of the basis where possible
    for (int i = 0; i < tb.m; ++i) {
        if (tb.basis[i] < nv + ns) continue;
        for (int j = 0; j < nv + ns; ++j) {
            if (std::abs(tb.T(i, j)) > 1e-9) {
                tb.pivot(i, j);
                break;
            }
        }
    }
    // forbid artificial columns in phase 2
    for (int i = 0; i < tb.m; ++i)
        for (int j = nv + ns; j < tb.n; ++j)
            if (tb.basis[i] != j) tb.T(i, j) = 0.0;

    tb.T.row(tb.m).setZero();
    tb.T.row(tb.m).head(nv) = c.transpose();
    for (int i = 0; i < tb.m; ++i) {
        int b = tb.basis[i];
        if (b < nv && c(b) != 0.0) tb.T.row(tb.m) -= c(b) * tb.T.row(i);
    }
    if (!tb.run(nv + ns, eps)) {
        res.status = LpResult::Status::unbounded;
        return res;
    }

    res.status = LpResult::Status::optimal;
    res.x = Eigen::VectorXd::Zero(nv);
    for (int i = 0; i < tb.m; ++i)
        if (tb.basis[i] < nv) res.x(tb.basis[i]) = tb.T(i, tb.n);
    res.value = c.dot(res.x);
    return res;
}

}  // namespace oplat

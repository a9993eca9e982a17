#include "oplat/projlattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oplat {

namespace {

double guard_tol(const Algebra& alg) { return std::max(1e-8, 1e3 * alg.tol); }

Projection pointwise(const Projection& p, const Projection& q, bool meet) {
    RVec a = p.base().values(), b = q.base().values();
    RVec r = meet ? RVec(a.cwiseMin(b)) : RVec(a.cwiseMax(b));
    return Projection(Element(p.algebra(), r));
}

Projection round_half(const Algebra& alg, const Mat& x) {
    Eigen::SelfAdjointEigenSolver<Mat> es((x + x.adjoint()) * 0.5);
    std::vector<int> keep;
    for (int i = 0; i < alg.dim; ++i)
        if (es.eigenvalues()(i) >= 0.5) keep.push_back(i);
    Mat cols(alg.dim, static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) cols.col(static_cast<int>(k)) = es.eigenvectors().col(keep[k]);
    return Projection::from_basis(alg, cols);
}

bool spectrum_settled(const Mat& x, double guard) {
    Eigen::SelfAdjointEigenSolver<Mat> es((x + x.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double v = es.eigenvalues()(i);
        if (v > guard && v < 1.0 - guard) return false;
    }
    return true;
}

double opnorm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

Projection wedge_exact(const Projection& p, const Projection& q) {
    require_same(p.algebra(), q.algebra());
    const Algebra& alg = p.algebra();
    if (alg.kind == Kind::commutative) return pointwise(p, q, true);
    const int n = alg.dim;
    Mat m = 2.0 * Mat::Identity(n, n) - p.base().matrix() - q.base().matrix();
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const double thresh = 1e3 * std::numeric_limits<double>::epsilon() * n;
    const auto& sv = svd.singularValues();
    std::vector<int> null;
    for (int i = 0; i < n; ++i)
        if (sv(i) <= thresh) null.push_back(i);
    Mat cols(n, static_cast<int>(null.size()));
    for (size_t k = 0; k < null.size(); ++k) cols.col(static_cast<int>(k)) = svd.matrixV().col(null[k]);
    return Projection::from_basis(alg, cols);
}

Projection vee(const Projection& p, const Projection& q) {
    return wedge_exact(p.complement(), q.complement()).complement();
}

IterativeWedge wedge_iterative(const Projection& p, const Projection& q, double tol, long long max_iter) {
    require_same(p.algebra(), q.algebra());
    const Algebra& alg = p.algebra();
    const Mat P = p.base().dense(), Q = q.base().dense();
    const double guard = guard_tol(alg);
    IterativeWedge out;

    Mat x = P;  // (pqp)^n
    long long n = 0;
    auto finish = [&](const Mat& xn) {
        out.iterations = n;
        out.value = alg.kind == Kind::commutative
                        ? Projection(Element(alg, RVec(xn.diagonal().real().unaryExpr(
                                                       [](double v) { return v >= 0.5 ? 1.0 : 0.0; }))))
                        : round_half(alg, xn);
    };

    for (int k = 0; k < kPlainSteps && n < max_iter; ++k) {
        Mat next = P * Q * x;
        out.gap = opnorm(x - next);
        if (out.gap <= tol && spectrum_settled(x, guard)) {
            out.converged = true;
            finish(x);
            return out;
        }
        x = next;
        ++n;
    }
    // Here x = T^n with T = pqp. The stop test is monotone in n (gap is max λ^n(1-λ)),
    // so gallop by squaring, then binary-search back with the stored powers T^(2^j).
    const Mat T = P * Q * P;
    auto stops = [&](const Mat& xn, double& gap) {
        gap = opnorm(xn - T * xn);
        return gap <= tol && spectrum_settled(xn, guard);
    };
    auto sym = [](const Mat& m) { return Mat((m + m.adjoint()) * 0.5); };
    std::vector<Mat> pow{T};  // pow[j] = T^(2^j)
    while (static_cast<long long>(1) << pow.size() <= n) pow.push_back(sym(pow.back() * pow.back()));

    double gap = out.gap;
    while (n < max_iter && !stops(x, gap)) {
        if (n > max_iter / 2) {
            out.gap = gap;
            finish(x);
            return out;
        }
        Mat sq = sym(x * x);
        if (stops(sq, gap)) break;
        x = sq;
        n *= 2;
        pow.push_back(sym(pow.back() * pow.back()));
    }
    if (n >= max_iter) {
        out.converged = stops(x, gap);
        out.gap = gap;
        finish(x);
        return out;
    }
    // x = T^n fails (or n is the first plain-phase failure); T^(2n) stops unless x itself does
    if (!stops(x, gap)) {
        long long lo = n;
        for (int j = static_cast<int>(pow.size()) - 1; j >= 0; --j) {
            const long long step = 1LL << j;
            if (step >= n) continue;
            Mat cand = sym(x * pow[j]);
            double g;
            if (!stops(cand, g)) {
                x = cand;
                lo += step;
            }
        }
        x = sym(x * T);
        n = lo + 1;
        stops(x, gap);
    }
    out.gap = gap;
    out.converged = true;
    finish(x);
    return out;
}

CommutingBounds commuting_bounds(const Projection& e, const Projection& f) {
    require_same(e.algebra(), f.algebra());
    const Projection fc = f.complement(), ec = e.complement();
    CommutingBounds b;
    // the two wedges are orthogonal, so their join is their sum
    b.lower = vee(wedge_exact(e, f), wedge_exact(e, fc));
    b.upper = vee(wedge_exact(ec, f), wedge_exact(ec, fc)).complement();
    return b;
}

CommutingBounds commuting_bounds_multi(const Projection& e, const std::vector<Projection>& F) {
    const double tol = guard_tol(e.algebra());
    CommutingBounds out{e, e, 0};
    if (F.empty()) return out;
    const int cap = 4 * (e.algebra().dim + 1) * static_cast<int>(F.size());
    int raises = 0, lowers = 0;
    // cyclic sweeps until a full sweep changes nothing
    for (int sweeps = 0;; ++sweeps) {
        if (sweeps > cap) throw std::runtime_error("commuting_bounds_multi: no stationary point");
        bool changed = false;
        for (const auto& f : F) {
            Projection up = commuting_bounds(out.upper, f).upper;
            if (!up.equals(out.upper, tol)) {
                out.upper = up;
                ++raises;
                changed = true;
            }
            Projection lo = commuting_bounds(out.lower, f).lower;
            if (!lo.equals(out.lower, tol)) {
                out.lower = lo;
                ++lowers;
                changed = true;
            }
        }
        if (!changed) break;
    }
    out.steps = std::max(raises, lowers);
    return out;
}

PairFlags predicates(const Projection& p, const Projection& q) {
    require_same(p.algebra(), q.algebra());
    const double tol = guard_tol(p.algebra());
    PairFlags f;
    f.commuting = p.commutes(q, tol);
    f.orthogonal = p.orthogonal(q, tol);
    f.coorthogonal = f.commuting && vee(p, q).rank() == p.algebra().dim;
    return f;
}

namespace {

LawProbe compare(const Projection& lhs, const Projection& rhs) {
    LawProbe r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.defect = lhs.base().max_abs_diff(rhs.base());
    r.holds = r.defect <= guard_tol(lhs.algebra());
    return r;
}

}  // namespace

LawProbe modularity_probe(const Projection& e, const Projection& f, const Projection& g) {
    if (!e.leq(g)) throw std::invalid_argument("modularity_probe: e <= g required");
    return compare(wedge_exact(vee(e, f), g), vee(e, wedge_exact(f, g)));
}

LawProbe distributivity_probe(const Projection& e, const Projection& f, const Projection& g) {
    return compare(wedge_exact(e, vee(f, g)), vee(wedge_exact(e, f), wedge_exact(e, g)));
}

std::vector<double> principal_cosines(const Projection& p, const Projection& q) {
    require_same(p.algebra(), q.algebra());
    if (p.rank() == 0 || q.rank() == 0) return {};
    Mat m = p.basis().adjoint() * q.basis();
    Eigen::JacobiSVD<Mat> svd(m);
    std::vector<double> out;
    for (int i = 0; i < svd.singularValues().size(); ++i) out.push_back(std::min(1.0, svd.singularValues()(i)));
    return out;
}

std::pair<Projection, Projection> angle_pair(const Algebra& alg, double theta) {
    if (alg.kind != Kind::matrix || alg.dim < 2) throw std::invalid_argument("angle_pair: M_n with n >= 2");
    Mat a = Mat::Zero(alg.dim, 1), b = Mat::Zero(alg.dim, 1);
    a(0, 0) = 1;
    b(0, 0) = std::cos(theta);
    b(1, 0) = std::sin(theta);
    return {Projection::from_basis(alg, a), Projection::from_basis(alg, b)};
}

}  // namespace oplat

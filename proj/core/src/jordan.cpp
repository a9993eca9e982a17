#include "oplat/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oplat {

namespace {

void require_positive_basic(const BasicElement& C, const char* op) {
    if (C.polarity != Polarity::basic) throw std::invalid_argument(std::string(op) + ": basic element expected");
    for (const auto& g : C.gens)
        if (!is_positive(g)) throw std::invalid_argument(std::string(op) + ": negative C");
}

void require_matrix(const Algebra& alg, const char* op) {
    if (alg.kind != Kind::matrix) throw std::invalid_argument(std::string(op) + ": matrix kind expected");
}

int argmin_generator(const BasicElement& C, const State& rho) {
    int best = 0;
    double v = rho(C.gens[0]);
    for (size_t i = 1; i < C.gens.size(); ++i) {
        double w = rho(C.gens[i]);
        if (w < v) {
            v = w;
            best = static_cast<int>(i);
        }
    }
    return best;
}

Element map_generator(const BasicElement& C, int i, Func f) { return func_calc(C.gens[i], f); }

// log grid on (0, 1]: 10^{-6}, ..., 1
std::vector<double> lambda_grid(bool include_one) {
    std::vector<double> g;
    const int n = 1000;
    for (int k = 0; k < n; ++k) {
        double e = -6.0 * (1.0 - static_cast<double>(k) / (n - 1));
        double l = std::pow(10.0, e);
        if (!include_one && l >= 1.0) continue;
        g.push_back(l);
    }
    return g;
}

Element pi_square(const BasicElement& C) {
    L1Image p = pi(C);
    return Element(C.alg, RVec(p.values.array().square()));
}

// r_ρ(X²) for basic X >= 0: exact in the commutative kind, certified otherwise
Interval square_at(const BasicElement& X, const State& rho, double eps) {
    if (X.alg.kind == Kind::commutative) {
        double v = rho(pi_square(X));
        return {v, v};
    }
    CertifiedInterval ci = eval_square_interval(X, rho, eps);
    return {ci.lower, ci.upper};
}

Interval op13_interval(const BasicElement& C, const BasicElement& D, const State& rho, double eps) {
    if (C.alg.kind == Kind::commutative) {
        double v = rho(pi_square(C) + pi_square(D));
        return {v, v};
    }
    CertifiedInterval ci = op13_at(C, D, rho, eps).interval;
    return {ci.lower, ci.upper};
}

Interval iadd(Interval a, Interval b) { return {a.lower + b.lower, a.upper + b.upper}; }
Interval isub(Interval a, Interval b) { return {a.lower - b.upper, a.upper - b.lower}; }
Interval iscale(Interval a, double s) {
    return s >= 0 ? Interval{a.lower * s, a.upper * s} : Interval{a.upper * s, a.lower * s};
}

Mat complement_basis(const Mat& V) {
    const int n = static_cast<int>(V.rows()), m = static_cast<int>(V.cols());
    Eigen::HouseholderQR<Mat> qr(V);
    Mat full = qr.householderQ();
    return full.rightCols(n - m);
}

double spectral_norm(const Mat& b) {
    if (b.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(b);
    return svd.singularValues()(0);
}

}  // namespace

// ---- basic square / root ----

SquareResult basic_square(const BasicElement& C) {
    require_positive_basic(C, "basic_square");
    BasicElement r{C.alg, {}, Polarity::basic};
    for (size_t i = 0; i < C.gens.size(); ++i) r.gens.push_back(map_generator(C, static_cast<int>(i), Func::square));
    return {r, C.alg.kind == Kind::commutative};
}

SquareResult basic_sqrt(const BasicElement& C) {
    require_positive_basic(C, "basic_sqrt");
    BasicElement r{C.alg, {}, Polarity::basic};
    for (size_t i = 0; i < C.gens.size(); ++i) r.gens.push_back(map_generator(C, static_cast<int>(i), Func::sqrt));
    return {r, C.alg.kind == Kind::commutative};
}

std::optional<StrictnessWitness> sqrt_square_strictness(const BasicElement& C, uint64_t seed, int trials) {
    require_positive_basic(C, "sqrt_square_strictness");
    require_matrix(C.alg, "sqrt_square_strictness");
    std::vector<Element> roots;
    for (const auto& g : C.gens) roots.push_back(func_calc(g, Func::sqrt));
    Rng rng(seed);
    const int k = static_cast<int>(C.gens.size());
    for (int t = 0; t < trials; ++t) {
        Vec xi = random_unit_vector(rng, C.alg.dim);
        State rho = State::vector(xi);
        std::vector<double> mu(k);
        double total = 0;
        for (auto& m : mu) total += (m = uniform(rng, 0.01, 1.0));
        Element comb = Element::zero(C.alg);
        for (int i = 0; i < k; ++i) comb += roots[i] * (mu[i] / total);
        double val = rho(comb.square());
        double s = s_rep(C, rho);
        if (val < s - 1e-6) {
            for (auto& m : mu) m /= total;
            return StrictnessWitness{xi, mu, val, s};
        }
    }
    return std::nullopt;
}

// ---- certified square interval ----

CertifiedInterval eval_square_interval(const BasicElement& C, const State& rho, double eps) {
    require_matrix(C.alg, "eval_square_interval");
    require_positive_basic(C, "eval_square_interval");
    if (eps <= 0) throw std::invalid_argument("eval_square_interval: eps must be positive");
    const int n = C.alg.dim;
    const Element& e = C.gens[argmin_generator(C, rho)];
    const double s = rho(e);

    Mat V;
    if (rho.type() == State::Type::mixture) {
        V.resize(n, static_cast<int>(rho.parts().size()));
        for (size_t i = 0; i < rho.parts().size(); ++i) V.col(static_cast<int>(i)) = rho.parts()[i].second;
    } else {
        V = rho.vector_at(n);
    }
    const int m = static_cast<int>(V.cols());
    Mat Q = complement_basis(V);

    // block witness: erase the coupling between span(V) and its complement
    Mat top = V.adjoint() * e.matrix() * V + eps * Mat::Identity(m, m);
    Mat w = V * top * V.adjoint();
    double R = 0;
    if (n > m) {
        Mat b = V.adjoint() * e.matrix() * Q;
        Mat low = Q.adjoint() * e.matrix() * Q;
        Eigen::SelfAdjointEigenSolver<Mat> es(low);
        double nb = spectral_norm(b);
        R = es.eigenvalues()(n - m - 1) + 1.01 * nb * nb / eps;
        w += R * Q * Q.adjoint();
    }
    Element wit(C.alg, Mat((w + w.adjoint()) * 0.5));
    double margin = (wit - e).min_eig();
    if (margin < -C.alg.tol * std::max(1.0, std::abs(R)) * 10.0)
        throw std::runtime_error("eval_square_interval: witness positivity fails");

    CertifiedInterval ci;
    ci.lower = s * s;
    // ρ(w²) = Σ weight·‖wξ‖²; forming w² would cost R²·eps of accuracy
    ci.upper = 0;
    const Mat wv = wit.matrix() * V;
    for (int i = 0; i < m; ++i)
        ci.upper += (rho.type() == State::Type::mixture ? rho.parts()[i].first : 1.0) * wv.col(i).squaredNorm();
    ci.eps = eps;
    ci.witness = wit;
    ci.witness_margin = margin;
    return ci;
}

// ---- general root and square at a state ----

Interval sqrt_general_at(const LatticeElement& P, const State& rho) {
    double shift = 0;
    for (const BasicElement* part : {&P.pos, &P.neg})
        for (const auto& g : part->gens) shift = std::max(shift, -g.min_eig());
    Element u = Element::scalar(P.algebra(), shift);
    auto root_value = [&](const BasicElement& X) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& g : X.gens) best = std::min(best, rho(func_calc(g + u, Func::sqrt)));
        return best;
    };
    const double a = root_value(P.pos), b = root_value(P.neg);
    auto f = [&](double l) { return (a - std::sqrt(1.0 - l) * b) / std::sqrt(l); };

    double grid_min = std::numeric_limits<double>::infinity();
    for (double l : lambda_grid(true)) grid_min = std::min(grid_min, f(l));
    double best = grid_min;
    if (a > 0 && a >= b) {
        double l = (a * a - b * b) / (a * a);
        if (l > 0) best = std::min(best, f(l));
        else best = std::min(best, 0.0);
    }
    return {best, grid_min};
}

double sqr_general_at(const LatticeElement& A, const State& rho) {
    double shift = 0;
    for (const BasicElement* part : {&A.pos, &A.neg})
        for (const auto& g : part->gens) shift = std::max(shift, -g.min_eig());
    const double x = s_rep(A.pos, rho) + shift, y = s_rep(A.neg, rho) + shift;
    const double u = x * x, v = y * y;

    double best = 0.0;  // λ -> 0
    for (double l : lambda_grid(false)) best = std::max(best, l * (u - v / (1.0 - l)));
    if (x > y && x > 0) {
        double l = 1.0 - y / x;
        if (l > 0 && l < 1) best = std::max(best, l * (u - v / (1.0 - l)));
    }

    if (A.algebra().kind == Kind::commutative) {
        // ((R+1)a₊, R a₊ + a₋) family at the state, through the π-images
        PositiveDecomposition pd = min_positive_decomposition(A);
        const double ap = rho(Element(A.algebra(), pi(pd.plus).values));
        const double am = rho(Element(A.algebra(), pi(pd.minus).values));
        for (int k = 0; k <= 24; ++k) {
            double R = std::pow(10.0, k / 4.0);
            best = std::max(best, ap * ap - 2.0 * ap * am - am * am / R);
        }
    }
    return best;
}

double square_general_at(const LatticeElement& A, const State& rho) {
    return sqr_general_at(A, rho) + sqr_general_at(negate(A), rho);
}

// ---- mixed operations on basic pairs ----

Op13Result op13_at(const BasicElement& C, const BasicElement& D, const State& rho, double eps) {
    require_matrix(C.alg, "op13_at");
    require_same(C.alg, D.alg);
    if (!rho.is_pure()) throw std::invalid_argument("op13_at: pure state expected");
    require_positive_basic(C, "op13_at");
    require_positive_basic(D, "op13_at");

    CertifiedInterval wc = eval_square_interval(C, rho, eps);
    const Element& f = D.gens[argmin_generator(D, rho)];
    Element wd = Element::zero(D.alg);
    if (f.norm() > D.alg.tol) wd = eval_square_interval(D, rho, eps).witness;

    const double sc = s_rep(C, rho), sd = s_rep(D, rho);
    Vec xi = rho.vector_at(C.alg.dim);
    Mat X = wc.witness.matrix() + cplx(0, 1) * wd.matrix();
    Op13Result r;
    r.interval.lower = sc * sc + sd * sd;
    r.interval.upper = (X.adjoint() * xi).squaredNorm();
    r.interval.eps = eps;
    r.interval.witness = wc.witness;
    r.interval.witness_margin = wc.witness_margin;
    r.witness_d = wd;
    return r;
}

Interval lie14_at(const BasicElement& C, const BasicElement& D, const State& rho, double eps) {
    Interval L = isub(isub(op13_interval(C, D, rho, eps), square_at(C, rho, eps)), square_at(D, rho, eps));
    return iscale(L, 0.5);
}

ComplexInterval product15_at(const BasicElement& C, const BasicElement& D, const State& rho, double eps) {
    Interval jordan =
        iscale(isub(isub(square_at(minkowski_sum(C, D), rho, eps), square_at(C, rho, eps)), square_at(D, rho, eps)),
               0.5);
    return {iscale(jordan, 0.5), iscale(lie14_at(C, D, rho, eps), 0.5)};
}

double generator_bracket(const Element& c, const Element& d, const State& rho) {
    require_same(c.algebra(), d.algebra());
    if (c.kind() == Kind::commutative) return 0.0;
    Mat m = cplx(0, 1) * (d.matrix() * c.matrix() - c.matrix() * d.matrix());
    Mat t = rho.density(c.dim());
    return 0.5 * (t * m).trace().real();
}

Interval quadratic_cloud_at(const BasicElement& C, const BasicElement& D, const BasicElement& E, const State& rho,
                            CloudType type, double eps) {
    auto sq = [&](const BasicElement& X) { return square_at(X, rho, eps); };
    BasicElement de = minkowski_sum(D, E);
    Interval tail = iadd(iadd(sq(C), sq(D)), sq(E));
    if (type == CloudType::first) {
        BasicElement cd = minkowski_sum(C, D), ce = minkowski_sum(C, E);
        Interval head = isub(isub(isub(sq(minkowski_sum(cd, E)), sq(cd)), sq(ce)), sq(de));
        return iadd(head, tail);
    }
    Interval head =
        isub(isub(isub(op13_interval(C, de, rho, eps), op13_interval(C, D, rho, eps)), op13_interval(C, E, rho, eps)),
             sq(de));
    return iadd(head, tail);
}

// ---- single elements ----

SqrSingle sqr_single(const Element& a, double R_max) {
    if (R_max < 1) throw std::invalid_argument("sqr_single: R_max must be >= 1");
    const Element ap = positive_part(a), am = negative_part(a);
    const Element ap2 = ap.square(), am2 = am.square();
    Element cross = Element::zero(a.algebra());
    if (a.kind() == Kind::matrix) {
        Mat c = ap.matrix() * am.matrix();
        cross = Element(a.algebra(), Mat(c + c.adjoint()));
    }
    // λ_R((R+1)²a₊² - (Ra₊+a₋)²/(1-λ_R)) with λ_R = 1/(R+1), expanded to avoid
    // cancellation: a₊² - (a₊a₋ + a₋a₊) - a₋²/R
    SqrSingle out;
    const int steps = static_cast<int>(std::ceil(4.0 * std::log10(R_max)));
    for (int k = 0; k <= steps; ++k) {
        double R = k == steps ? R_max : std::pow(10.0, k / 4.0);
        out.value = ap2 - cross - am2 * (1.0 / R);
        ++out.grid_points;
    }
    out.gap = (out.value - ap2).norm();
    const double na = am.norm();
    out.gap_bound = na * na / R_max;
    return out;
}

Lemma2Report lemma2_state_check(const Element& a, const State& rho) {
    require_matrix(a.algebra(), "lemma2_state_check");
    if (!rho.is_pure()) throw std::invalid_argument("lemma2_state_check: pure state expected");
    const Algebra& alg = a.algebra();
    const int n = alg.dim;
    const Vec xi = rho.vector_at(n);
    Lemma2Report rep;
    rep.rho_a = rho(a);

    // the 2x2 data of the index-pair reduction
    Spectrum sp = eig(a);
    Vec xp = Vec::Zero(n), xm = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
        cplx c = sp.vectors.col(i).dot(xi);
        if (sp.values(i) >= 0) xp += c * sp.vectors.col(i);
        else xm += c * sp.vectors.col(i);
    }
    rep.t_plus = xp.squaredNorm();
    rep.t_minus = xm.squaredNorm();
    rep.tau = std::sqrt(rep.t_plus * rep.t_minus);
    if (rep.t_plus > 0) rep.a_plus = xp.dot(a.matrix() * xp).real() / rep.t_plus;
    if (rep.t_minus > 0) rep.a_minus = -xm.dot(a.matrix() * xm).real() / rep.t_minus;

    const double tol = alg.tol;
    Element target = a;
    double delta = 0.0;
    if (rep.rho_a > tol) {
        rep.side = Lemma2Report::Side::minus;
        target = -a;
    } else if (rep.rho_a >= -tol) {
        // degenerate: shrink the positive part slightly
        rep.perturbed = true;
        delta = 1e-5;
    }
    const double top = delta - rho(target);  // > 0

    Mat Q = complement_basis(xi);
    double threshold = 0;
    if (n > 1) {
        Mat b = xi.adjoint() * target.matrix() * Q;
        Mat low = Q.adjoint() * target.matrix() * Q + b.adjoint() * b / top;
        Eigen::SelfAdjointEigenSolver<Mat> es((low + low.adjoint()) * 0.5);
        threshold = es.eigenvalues()(n - 2);
    }
    rep.threshold = threshold;
    rep.lambda = threshold > 0 ? 1.2 * threshold : 0.0;
    Mat c = rep.lambda * (Q * Q.adjoint()) + delta * (xi * xi.adjoint());
    rep.witness = Element(alg, Mat((c + c.adjoint()) * 0.5));
    rep.psd_margin = (rep.witness - target).min_eig();
    rep.rho_c2 = rho(rep.witness.square());
    const double scale = std::max(1.0, rep.witness.norm() + a.norm());
    rep.ok = rep.psd_margin >= -tol * scale * 10.0 && rep.rho_c2 <= 1e-8;
    return rep;
}

// ---- large-shift gap ----

const char* growth_name(Growth f) {
    switch (f) {
        case Growth::constant: return "const";
        case Growth::sqrt: return "sqrt";
        case Growth::identity: return "id";
    }
    return "?";
}

std::vector<GapPoint> lemma5_asymptotics(const BasicElement& C, Growth f, const std::vector<double>& r_grid,
                                         const State& rho) {
    require_positive_basic(C, "lemma5_asymptotics");
    if (!rho.is_pure()) throw std::invalid_argument("lemma5_asymptotics: pure state expected");
    const int n = C.alg.dim;
    const Vec xi = rho.vector_at(n);

    struct Gen { RVec mu; RVec w; double rho_c; };
    std::vector<Gen> gens;
    double s_c = std::numeric_limits<double>::infinity();
    for (const auto& g : C.gens) {
        Spectrum sp = eig(g);
        RVec w(n);
        for (int k = 0; k < n; ++k) w(k) = std::norm(sp.vectors.col(k).dot(xi));
        gens.push_back({sp.values.cwiseMax(0.0), w, rho(g)});
        s_c = std::min(s_c, gens.back().rho_c);
    }

    std::vector<GapPoint> trace;
    for (double r : r_grid) {
        // ρ(√(c+r))² - r = ρ(c) - Var_ρ(√(c+r)), variance from shifted roots
        double v = std::numeric_limits<double>::infinity();
        const double sr = std::sqrt(r);
        for (const auto& g : gens) {
            RVec d = g.mu.unaryExpr([&](double m) { return m / (std::sqrt(m + r) + sr); });
            double mean = g.w.dot(d);
            double var = g.w.dot((d.array() - mean).square().matrix());
            v = std::min(v, g.rho_c - var);
        }
        double fr = f == Growth::constant ? 1.0 : f == Growth::sqrt ? sr : r;
        trace.push_back({r, fr * std::abs(v - s_c)});
    }
    return trace;
}

bool gap_trace_decreasing(const std::vector<GapPoint>& trace, double from_r) {
    for (size_t k = 0; k + 1 < trace.size(); ++k) {
        if (trace[k].r < from_r) continue;
        if (trace[k + 1].gap > trace[k].gap * (1.0 + 1e-9) + 1e-15) return false;
    }
    return true;
}

// ---- two-variable Schwarz check ----

namespace {

Eigen::VectorXd coords(const Element& y) {
    if (y.kind() == Kind::commutative) return y.values();
    const int n = y.dim();
    Eigen::VectorXd v(2 * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            v(i * n + j) = y.matrix()(i, j).real();
            v(n * n + i * n + j) = y.matrix()(i, j).imag();
        }
    return v;
}

}  // namespace

Element PositiveMap::operator()(const Element& y) const {
    require_same(domain, y.algebra());
    const int k = static_cast<int>(spanning.size());
    Eigen::VectorXd target = coords(y);
    Eigen::MatrixXd B(target.size(), k);
    for (int j = 0; j < k; ++j) B.col(j) = coords(spanning[j]);
    Eigen::VectorXd beta = B.colPivHouseholderQr().solve(target);
    if ((B * beta - target).norm() > 1e-8 * std::max(1.0, target.norm()))
        throw std::invalid_argument("positive map: element outside the spanning set");
    Element out = Element::zero(codomain);
    for (int j = 0; j < k; ++j) out += images[j] * beta(j);
    return out;
}

void PositiveMap::verify_positive(uint64_t seed, int probes) const {
    Rng rng(seed);
    auto check = [&](const Element& y) {
        Element v = (*this)(y);
        if (v.values().minCoeff() < -codomain.tol * std::max(1.0, y.norm()) * 10.0)
            throw std::invalid_argument("phi is not positive on probes");
    };
    for (int i = 0; i < probes; ++i) {
        if (domain.kind == Kind::commutative) {
            check(Element(domain, random_tuple(rng, domain.dim, 0.0, 1.0)));
        } else {
            Element g(domain, random_hermitian(rng, domain.dim));
            check(g.square());
        }
    }
    for (const auto& s : spanning)
        if (is_positive(s)) check(s);
}

PositiveMap PositiveMap::identity(const Algebra& alg) {
    if (alg.kind != Kind::commutative) throw std::invalid_argument("identity map: commutative kind expected");
    PositiveMap m{alg, alg, {}, {}};
    for (int t = 0; t < alg.dim; ++t) {
        RVec e = RVec::Zero(alg.dim);
        e(t) = 1;
        m.spanning.emplace_back(alg, e);
        m.images.emplace_back(alg, e);
    }
    return m;
}

PositiveMap PositiveMap::restriction(const Algebra& alg, const std::vector<int>& kept) {
    if (alg.kind != Kind::commutative) throw std::invalid_argument("restriction map: commutative kind expected");
    if (kept.empty()) throw std::invalid_argument("restriction map: nothing kept");
    Algebra cod = Algebra::commutative(static_cast<int>(kept.size()), alg.tol);
    PositiveMap m{alg, cod, {}, {}};
    for (int t = 0; t < alg.dim; ++t) {
        RVec e = RVec::Zero(alg.dim);
        e(t) = 1;
        RVec img = RVec::Zero(cod.dim);
        for (size_t j = 0; j < kept.size(); ++j)
            if (kept[j] == t) img(static_cast<int>(j)) = 1;
        m.spanning.emplace_back(alg, e);
        m.images.emplace_back(cod, img);
    }
    return m;
}

PositiveMap PositiveMap::state(const Algebra& alg, const State& rho) {
    Algebra cod = Algebra::commutative(1, alg.tol);
    PositiveMap m{alg, cod, {}, {}};
    const int n = alg.dim;
    auto push = [&](const Element& b) {
        m.spanning.push_back(b);
        m.images.emplace_back(cod, RVec(RVec::Constant(1, rho(b))));
    };
    if (alg.kind == Kind::commutative) {
        for (int t = 0; t < n; ++t) {
            RVec e = RVec::Zero(n);
            e(t) = 1;
            push(Element(alg, e));
        }
        return m;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Mat s = Mat::Zero(n, n);
            s(i, j) = 1;
            s(j, i) = 1;
            if (i == j) s(i, i) = 1;
            push(Element(alg, s));
            if (i != j) {
                Mat t = Mat::Zero(n, n);
                t(i, j) = cplx(0, 1);
                t(j, i) = cplx(0, -1);
                push(Element(alg, t));
            }
        }
    return m;
}

SchwarzReport schwarz22_check(const PositiveMap& phi, const Element& x0, const Element& x1) {
    require_same(phi.domain, x0.algebra());
    require_same(phi.domain, x1.algebra());
    Element xx;
    if (x0.kind() == Kind::commutative) {
        xx = x0.square() + x1.square();
    } else {
        Mat X = x0.matrix() + cplx(0, 1) * x1.matrix();
        Mat Y = X * X.adjoint();
        xx = Element(phi.domain, Mat((Y + Y.adjoint()) * 0.5));
    }
    RVec lhs = phi(xx).values(), r0 = phi(x0).values(), r1 = phi(x1).values();
    RVec diff = lhs - r0.cwiseAbs2() - r1.cwiseAbs2();
    SchwarzReport rep;
    rep.margin = diff.minCoeff();
    double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
    rep.holds = rep.margin >= -phi.codomain.tol * scale * 10.0;
    return rep;
}

}  // namespace oplat

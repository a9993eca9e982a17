#include "oplat/algebra.hpp"

#include "oplat/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oplat {

Algebra Algebra::commutative(int m, double tol) {
    if (m < 1) throw std::invalid_argument("spectrum size must be >= 1");
    if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");
    return Algebra{Kind::commutative, m, tol};
}

Algebra Algebra::matrix(int n, double tol) {
    if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");
    return Algebra{Kind::matrix, n, tol};
}

void require_same(const Algebra& a, const Algebra& b) {
    if (!a.same(b)) throw std::invalid_argument("algebra mismatch");
}

// ---- Element ----

Element::Element(const Algebra& alg, RVec values) : alg_(alg), vals_(std::move(values)) {
    if (alg.kind != Kind::commutative) throw std::invalid_argument("tuple given for matrix algebra");
    if (vals_.size() != alg.dim) throw std::invalid_argument("tuple length != spectrum size");
}

Element::Element(const Algebra& alg, Mat m) : alg_(alg) {
    if (alg.kind != Kind::matrix) throw std::invalid_argument("matrix given for commutative algebra");
    if (m.rows() != alg.dim || m.cols() != alg.dim) throw std::invalid_argument("matrix size != dimension");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > alg.tol * scale)
        throw std::invalid_argument("matrix is not Hermitian");
    mat_ = (m + m.adjoint()) * 0.5;
}

Element Element::zero(const Algebra& alg) { return scalar(alg, 0.0); }
Element Element::unit(const Algebra& alg) { return scalar(alg, 1.0); }

Element Element::scalar(const Algebra& alg, double a) {
    if (alg.kind == Kind::commutative) return Element(alg, RVec(RVec::Constant(alg.dim, a)));
    return Element(alg, Mat(Mat::Identity(alg.dim, alg.dim) * a));
}

Mat Element::dense() const {
    if (kind() == Kind::matrix) return mat_;
    return vals_.cast<cplx>().asDiagonal();
}

Element Element::operator+(const Element& o) const {
    require_same(alg_, o.alg_);
    Element r = *this;
    if (kind() == Kind::commutative) r.vals_ += o.vals_;
    else r.mat_ += o.mat_;
    return r;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const { return *this * -1.0; }

Element Element::operator*(double a) const {
    Element r = *this;
    if (kind() == Kind::commutative) r.vals_ *= a;
    else r.mat_ *= a;
    return r;
}

Element& Element::operator+=(const Element& o) {
    *this = *this + o;
    return *this;
}

Element Element::square() const {
    if (kind() == Kind::commutative) return Element(alg_, RVec(vals_.array().square()));
    Element r = *this;
    r.mat_ = mat_ * mat_;
    r.mat_ = (r.mat_ + r.mat_.adjoint()) * 0.5;
    return r;
}

Element Element::sandwich(const Element& p) const {
    require_same(alg_, p.alg_);
    if (kind() == Kind::commutative) return Element(alg_, RVec(p.vals_.cwiseProduct(vals_).cwiseProduct(p.vals_)));
    Element r = *this;
    r.mat_ = p.mat_ * mat_ * p.mat_;
    r.mat_ = (r.mat_ + r.mat_.adjoint()) * 0.5;
    return r;
}

double Element::norm() const { return std::max(std::abs(min_eig()), std::abs(max_eig())); }

double Element::min_eig() const {
    if (kind() == Kind::commutative) return vals_.minCoeff();
    return eig(*this).values(0);
}

double Element::max_eig() const {
    if (kind() == Kind::commutative) return vals_.maxCoeff();
    return eig(*this).values(dim() - 1);
}

double Element::trace() const {
    if (kind() == Kind::commutative) return vals_.sum();
    return mat_.trace().real();
}

double Element::max_abs_diff(const Element& o) const {
    require_same(alg_, o.alg_);
    if (kind() == Kind::commutative) return (vals_ - o.vals_).cwiseAbs().maxCoeff();
    return (mat_ - o.mat_).cwiseAbs().maxCoeff();
}

bool Element::leq(const Element& o) const { return (o - *this).min_eig() >= -alg_.tol; }

// ---- spectra ----

Spectrum eig(const Element& x) {
    const int n = x.dim();
    Spectrum s;
    if (x.kind() == Kind::commutative) {
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return x.values()(a) < x.values()(b); });
        s.values.resize(n);
        s.vectors = Mat::Zero(n, n);
        for (int k = 0; k < n; ++k) {
            s.values(k) = x.values()(idx[k]);
            s.vectors(idx[k], k) = 1.0;
        }
        return s;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(x.matrix());
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    s.values = es.eigenvalues();
    s.vectors = es.eigenvectors();
    return s;
}

Element from_spectrum(const Algebra& alg, const RVec& values, const Mat& vectors) {
    Mat m = vectors * values.cast<cplx>().asDiagonal() * vectors.adjoint();
    if (alg.kind == Kind::commutative) return Element(alg, RVec(m.diagonal().real()));
    return Element(alg, Mat((m + m.adjoint()) * 0.5));
}

bool is_positive(const Element& x) { return x.min_eig() >= -x.tol(); }

namespace {

Element apply(const Element& x, double (*f)(double)) {
    if (x.kind() == Kind::commutative) return Element(x.algebra(), RVec(x.values().unaryExpr(f)));
    Spectrum s = eig(x);
    return from_spectrum(x.algebra(), s.values.unaryExpr(f), s.vectors);
}

double clamp_sqrt(double t) { return std::sqrt(std::max(0.0, t)); }
double sq(double t) { return t * t; }
double pos(double t) { return std::max(0.0, t); }
double neg(double t) { return std::max(0.0, -t); }

}  // namespace

Element func_calc(const Element& x, Func f) {
    if (f == Func::square) return apply(x, sq);
    if (!is_positive(x)) throw std::invalid_argument("sqrt of a non-positive element");
    return apply(x, clamp_sqrt);
}

Element positive_part(const Element& x) { return apply(x, pos); }
Element negative_part(const Element& x) { return apply(x, neg); }

// ---- projections ----

namespace {

double proj_check_tol(const Algebra& alg) { return std::max(1e-8, 1e3 * alg.tol); }

Mat orthonormal_columns(const Mat& b) {
    if (b.cols() == 0) return Mat(b.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double thresh = 1e3 * std::numeric_limits<double>::epsilon() * b.rows() * std::max(1.0, sv(0));
    int r = 0;
    while (r < sv.size() && sv(r) > thresh) ++r;
    return svd.matrixU().leftCols(r);
}

}  // namespace

Projection::Projection(const Element& base) {
    const Algebra& alg = base.algebra();
    double t = proj_check_tol(alg);
    if (base.max_abs_diff(base.square()) > t) throw std::invalid_argument("element is not idempotent");
    Spectrum s = eig(base);
    Mat cols(alg.dim, 0);
    std::vector<int> keep;
    for (int i = 0; i < s.values.size(); ++i)
        if (s.values(i) > 0.5) keep.push_back(i);
    cols.resize(alg.dim, static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) cols.col(static_cast<int>(k)) = s.vectors.col(keep[k]);
    *this = from_basis(alg, cols);
}

Projection Projection::from_basis(const Algebra& alg, const Mat& basis) {
    if (basis.rows() != alg.dim) throw std::invalid_argument("basis row count != dimension");
    Projection p;
    p.basis_ = orthonormal_columns(basis);
    p.rank_ = static_cast<int>(p.basis_.cols());
    Mat m = p.basis_ * p.basis_.adjoint();
    if (alg.kind == Kind::commutative) {
        RVec d = m.diagonal().real();
        for (int i = 0; i < d.size(); ++i) d(i) = d(i) > 0.5 ? 1.0 : 0.0;
        p.base_ = Element(alg, d);
        // keep commutative bases exact indicator columns
        Mat cols = Mat::Zero(alg.dim, p.rank_);
        int k = 0;
        for (int i = 0; i < d.size(); ++i)
            if (d(i) > 0.5) cols(i, k++) = 1.0;
        p.basis_ = cols;
    } else {
        p.base_ = Element(alg, Mat((m + m.adjoint()) * 0.5));
    }
    return p;
}

Projection Projection::zero(const Algebra& alg) { return from_basis(alg, Mat(alg.dim, 0)); }
Projection Projection::unit(const Algebra& alg) { return from_basis(alg, Mat::Identity(alg.dim, alg.dim)); }

Projection Projection::complement() const {
    return Projection(Element::unit(algebra()) - base_);
}

bool Projection::leq(const Projection& q) const {
    Mat p = base_.dense(), qq = q.base_.dense();
    return (qq * p - p).cwiseAbs().maxCoeff() <= proj_check_tol(algebra());
}

bool Projection::equals(const Projection& q, double tol) const { return base_.max_abs_diff(q.base_) <= tol; }

bool Projection::commutes(const Projection& q, double tol) const {
    Mat p = base_.dense(), qq = q.base_.dense();
    return (p * qq - qq * p).cwiseAbs().maxCoeff() <= tol;
}

bool Projection::orthogonal(const Projection& q, double tol) const {
    return (base_.dense() * q.base_.dense()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

Projection band_projection(const Element& x, const Spectrum& s, auto&& pred) {
    std::vector<int> keep;
    for (int i = 0; i < s.values.size(); ++i)
        if (pred(s.values(i))) keep.push_back(i);
    Mat cols(x.dim(), static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) cols.col(static_cast<int>(k)) = s.vectors.col(keep[k]);
    return Projection::from_basis(x.algebra(), cols);
}

void require_positive(const Element& x, const char* op) {
    if (!is_positive(x)) throw std::invalid_argument(std::string(op) + ": negative input");
}

}  // namespace

Projection support_projection(const Element& x) {
    require_positive(x, "support_projection");
    double mr = x.algebra().merge_radius();
    return band_projection(x, eig(x), [&](double l) { return l > mr; });
}

SpectralProjections spectral_projections(const Element& x, double alpha, double beta) {
    if (alpha > beta) throw std::invalid_argument("spectral_projections: alpha > beta");
    require_positive(x, "spectral_projections");
    double mr = x.algebra().merge_radius();
    Spectrum s = eig(x);
    SpectralProjections out;
    out.sub = band_projection(x, s, [&](double l) { return l > mr && l <= alpha + mr; });
    out.sup = band_projection(x, s, [&](double l) { return l >= alpha - mr; });
    out.band = band_projection(x, s, [&](double l) { return l >= alpha - mr && l < beta - mr; });
    return out;
}

std::vector<ChainTerm> chain_decomposition(const Element& x) {
    require_positive(x, "chain_decomposition");
    const double mr = x.algebra().merge_radius();
    Spectrum s = eig(x);
    const int n = static_cast<int>(s.values.size());

    // clusters of eigenvalues, scanned from the top
    struct Cluster { double mu; std::vector<int> idx; };
    std::vector<Cluster> clusters;
    for (int i = n - 1; i >= 0; --i) {
        double l = s.values(i);
        if (!clusters.empty() && clusters.back().idx.size() &&
            s.values(clusters.back().idx.back()) - l <= mr) {
            clusters.back().idx.push_back(i);
        } else {
            clusters.push_back({0.0, {i}});
        }
    }
    for (auto& c : clusters) {
        double sum = 0;
        for (int i : c.idx) sum += s.values(i);
        c.mu = sum / static_cast<double>(c.idx.size());
    }
    while (!clusters.empty() && clusters.back().mu <= mr) clusters.pop_back();

    std::vector<ChainTerm> out;
    std::vector<int> acc;
    for (size_t k = 0; k < clusters.size(); ++k) {
        acc.insert(acc.end(), clusters[k].idx.begin(), clusters[k].idx.end());
        double next = k + 1 < clusters.size() ? clusters[k + 1].mu : 0.0;
        double a = clusters[k].mu - next;
        Mat cols(n, static_cast<int>(acc.size()));
        for (size_t j = 0; j < acc.size(); ++j) cols.col(static_cast<int>(j)) = s.vectors.col(acc[j]);
        out.push_back({a, Projection::from_basis(x.algebra(), cols)});
    }
    return out;
}

Element reassemble(const Algebra& alg, const std::vector<ChainTerm>& chain) {
    Element r = Element::zero(alg);
    for (const auto& t : chain) r += t.p.base() * t.alpha;
    return r;
}

// ---- states ----

State State::point(int index) {
    if (index < 0) throw std::invalid_argument("negative point index");
    State s;
    s.type_ = Type::point;
    s.index_ = index;
    return s;
}

State State::vector(const Vec& xi) {
    double nrm = xi.norm();
    if (nrm == 0.0) throw std::invalid_argument("zero state vector");
    if (std::abs(nrm - 1.0) > 1e-8) throw std::invalid_argument("state vector is not a unit vector");
    State s;
    s.type_ = Type::vector;
    s.parts_ = {{1.0, xi / nrm}};
    return s;
}

State State::mixture(std::vector<std::pair<double, Vec>> parts) {
    if (parts.empty()) throw std::invalid_argument("empty mixture");
    double total = 0;
    for (auto& [w, v] : parts) {
        if (w <= 0) throw std::invalid_argument("mixture weights must be positive");
        double nrm = v.norm();
        if (std::abs(nrm - 1.0) > 1e-8) throw std::invalid_argument("mixture vector is not a unit vector");
        v /= nrm;
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("mixture weights must sum to 1");
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = i + 1; j < parts.size(); ++j)
            if (std::abs(parts[i].second.dot(parts[j].second)) > 1e-8)
                throw std::invalid_argument("mixture vectors must be orthogonal");
    State s;
    s.type_ = Type::mixture;
    s.parts_ = std::move(parts);
    return s;
}

bool State::is_pure() const { return type_ != Type::mixture || parts_.size() == 1; }

Vec State::vector_at(int dim) const {
    if (!is_pure()) throw std::invalid_argument("state is not pure");
    if (type_ == Type::point) {
        if (index_ >= dim) throw std::invalid_argument("state dimension mismatch");
        Vec v = Vec::Zero(dim);
        v(index_) = 1.0;
        return v;
    }
    if (parts_[0].second.size() != dim) throw std::invalid_argument("state dimension mismatch");
    return parts_[0].second;
}

Mat State::density(int dim) const {
    if (type_ == Type::point) {
        if (index_ >= dim) throw std::invalid_argument("state dimension mismatch");
        Mat t = Mat::Zero(dim, dim);
        t(index_, index_) = 1.0;
        return t;
    }
    Mat t = Mat::Zero(dim, dim);
    for (const auto& [w, v] : parts_) {
        if (v.size() != dim) throw std::invalid_argument("state dimension mismatch");
        t += w * v * v.adjoint();
    }
    return t;
}

double State::operator()(const Element& x) const {
    const int n = x.dim();
    if (type_ == Type::point) {
        if (index_ >= n) throw std::invalid_argument("state dimension mismatch");
        return x.kind() == Kind::commutative ? x.values()(index_) : x.matrix()(index_, index_).real();
    }
    double acc = 0;
    for (const auto& [w, v] : parts_) {
        if (v.size() != n) throw std::invalid_argument("state dimension mismatch");
        if (x.kind() == Kind::commutative) acc += w * v.cwiseAbs2().dot(x.values());
        else acc += w * v.dot(x.matrix() * v).real();
    }
    return acc;
}

// ---- separation ----

namespace {

// Real coordinates of a Hermitian matrix: real parts then imaginary parts.
Eigen::VectorXd hermitian_coords(const Mat& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd v(2 * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            v(i * n + j) = m(i, j).real();
            v(n * n + i * n + j) = m(i, j).imag();
        }
    return v;
}

}  // namespace

std::optional<Element> separate_states(const std::vector<Element>& span, const State& rho, const State& sigma,
                                       double eps) {
    if (eps <= 0) throw std::invalid_argument("separate_states: eps must be positive");
    if (span.empty()) return std::nullopt;
    const Algebra& alg = span.front().algebra();
    for (const auto& x : span) require_same(alg, x.algebra());
    const int k = static_cast<int>(span.size());

    if (alg.kind == Kind::commutative) {
        // c = sum (u_k - v_k) x_k, c >= 0, rho(c) = 1, minimize sigma(c)
        const int m = alg.dim;
        Eigen::VectorXd cost(2 * k);
        Eigen::MatrixXd Aub(m, 2 * k), Aeq(1, 2 * k);
        for (int j = 0; j < k; ++j) {
            double sj = sigma(span[j]), rj = rho(span[j]);
            cost(j) = sj;
            cost(k + j) = -sj;
            Aeq(0, j) = rj;
            Aeq(0, k + j) = -rj;
            for (int t = 0; t < m; ++t) {
                Aub(t, j) = -span[j].values()(t);
                Aub(t, k + j) = span[j].values()(t);
            }
        }
        LpResult r = lp_minimize(cost, Aub, Eigen::VectorXd::Zero(m), Aeq, Eigen::VectorXd::Ones(1));
        if (!r.ok() || r.value > eps + alg.tol) return std::nullopt;
        Element c = Element::zero(alg);
        for (int j = 0; j < k; ++j) c += span[j] * (r.x(j) - r.x(k + j));
        return c;
    }

    const int n = alg.dim;
    Eigen::MatrixXd basis(2 * n * n, k);
    for (int j = 0; j < k; ++j) basis.col(j) = hermitian_coords(span[j].matrix());
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);

    Mat tr = rho.density(n), ts = sigma.density(n);
    std::vector<Vec> candidates;
    const double grid[] = {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 1e2, 1e3, 1e4, 1e6};
    for (double lam : grid) {
        Eigen::SelfAdjointEigenSolver<Mat> es(tr - lam * ts);
        for (int i = n - 1; i >= 0; --i) candidates.push_back(es.eigenvectors().col(i));
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(ts);
    for (int i = 0; i < n; ++i) candidates.push_back(es.eigenvectors().col(i));

    for (const Vec& v : candidates) {
        Mat q = v * v.adjoint();
        Eigen::VectorXd target = hermitian_coords(q);
        Eigen::VectorXd coef = qr.solve(target);
        if ((basis * coef - target).norm() > 1e-8) continue;
        Element c(alg, Mat((q + q.adjoint()) * 0.5));
        double rc = rho(c);
        if (rc <= alg.tol) continue;
        c = c * (1.0 / rc);
        if (sigma(c) <= eps) return c;
    }
    return std::nullopt;
}

// ---- randomness ----

double uniform(Rng& rng, double lo, double hi) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

int uniform_int(Rng& rng, int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

namespace {

double gaussian(Rng& rng) {
    double u1 = uniform(rng, 0.0, 1.0);
    double u2 = uniform(rng, 0.0, 1.0);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Mat complex_gaussian(Rng& rng, int r, int c) {
    Mat g(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            double re = gaussian(rng);
            double im = gaussian(rng);
            g(i, j) = cplx(re, im);
        }
    return g;
}

}  // namespace

Mat random_hermitian(Rng& rng, int n, double scale) {
    Mat g = complex_gaussian(rng, n, n);
    return (g + g.adjoint()) * (0.5 * scale);
}

Mat random_unitary(Rng& rng, int n) {
    Mat g = complex_gaussian(rng, n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        cplx d = r(j, j);
        double a = std::abs(d);
        if (a > 0) q.col(j) *= d / a;
    }
    return q;
}

Vec random_unit_vector(Rng& rng, int n) {
    Vec v = complex_gaussian(rng, n, 1).col(0);
    return v / v.norm();
}

Mat random_projection_matrix(Rng& rng, int n, int rank) {
    Mat u = random_unitary(rng, n).leftCols(rank);
    return u * u.adjoint();
}

RVec random_tuple(Rng& rng, int m, double lo, double hi) {
    RVec v(m);
    for (int i = 0; i < m; ++i) v(i) = uniform(rng, lo, hi);
    return v;
}

}  // namespace oplat

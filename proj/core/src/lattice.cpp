#include "oplat/lattice.hpp"

#include "oplat/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oplat {

namespace {

const Algebra& common_algebra(const std::vector<Element>& gens) {
    if (gens.empty()) throw std::invalid_argument("basic element needs at least one generator");
    for (const auto& g : gens) require_same(gens.front().algebra(), g.algebra());
    return gens.front().algebra();
}

}  // namespace

BasicElement BasicElement::basic(std::vector<Element> gens) {
    const Algebra& alg = common_algebra(gens);
    return BasicElement{alg, std::move(gens), Polarity::basic};
}

BasicElement BasicElement::antibasic(std::vector<Element> gens) {
    const Algebra& alg = common_algebra(gens);
    return BasicElement{alg, std::move(gens), Polarity::antibasic};
}

BasicElement BasicElement::negated() const {
    BasicElement r = *this;
    for (auto& g : r.gens) g = -g;
    r.polarity = polarity == Polarity::basic ? Polarity::antibasic : Polarity::basic;
    return r;
}

double BasicElement::max_generator_norm() const {
    double m = 0;
    for (const auto& g : gens) m = std::max(m, g.norm());
    return m;
}

LatticeElement LatticeElement::from(const BasicElement& b) {
    if (b.polarity == Polarity::basic) return {b, BasicElement::single(Element::zero(b.alg))};
    return {BasicElement::single(Element::zero(b.alg)), b.negated()};
}

LatticeElement LatticeElement::image(const Element& a) {
    return {BasicElement::single(a), BasicElement::single(Element::zero(a.algebra()))};
}

LatticeElement LatticeElement::zero(const Algebra& alg) { return image(Element::zero(alg)); }

// ---- probes ----

ProbeSet make_probes(const Algebra& alg, const std::vector<LatticeElement>& elems, int k, uint64_t seed) {
    ProbeSet ps;
    if (alg.kind == Kind::commutative) {
        ps.exact = true;
        for (int t = 0; t < alg.dim; ++t) ps.states.push_back(State::point(t));
        return ps;
    }
    for (const auto& e : elems)
        for (const BasicElement* part : {&e.pos, &e.neg})
            for (const auto& g : part->gens) {
                Spectrum s = eig(g);
                for (int i = 0; i < alg.dim; ++i) ps.states.push_back(State::vector(s.vectors.col(i)));
            }
    Rng rng(seed);
    for (int i = 0; i < k; ++i) ps.states.push_back(State::vector(random_unit_vector(rng, alg.dim)));
    return ps;
}

double s_rep(const BasicElement& C, const State& rho) {
    double best = C.polarity == Polarity::basic ? std::numeric_limits<double>::infinity()
                                                : -std::numeric_limits<double>::infinity();
    for (const auto& g : C.gens) {
        double v = rho(g);
        best = C.polarity == Polarity::basic ? std::min(best, v) : std::max(best, v);
    }
    return best;
}

double s_rep(const LatticeElement& A, const State& rho) { return s_rep(A.pos, rho) - s_rep(A.neg, rho); }

// ---- order decisions ----

bool dominates_hull(const std::vector<Element>& upper, const std::vector<Element>& lower) {
    if (lower.empty()) throw std::invalid_argument("dominates_hull: empty lower set");
    const Algebra& alg = lower.front().algebra();
    if (alg.kind != Kind::commutative) throw std::invalid_argument("dominates_hull: commutative kind only");
    const int m = alg.dim;
    const int k = static_cast<int>(lower.size());
    Eigen::MatrixXd Aub(m, k), Aeq = Eigen::MatrixXd::Ones(1, k);
    for (int j = 0; j < k; ++j) Aub.col(j) = lower[j].values();
    for (const auto& u : upper) {
        // quick accept: a single generator below u
        bool single = false;
        for (const auto& l : lower)
            if ((u.values() - l.values()).minCoeff() >= -alg.tol) { single = true; break; }
        if (single) continue;
        Eigen::VectorXd b = u.values().array() + alg.tol;
        LpResult r = lp_minimize(Eigen::VectorXd::Zero(k), Aub, b, Aeq, Eigen::VectorXd::Ones(1));
        if (!r.ok()) return false;
    }
    return true;
}

namespace {

double scale_of(const std::vector<const BasicElement*>& parts) {
    double s = 1.0;
    for (auto* p : parts) s = std::max(s, p->max_generator_norm());
    return s;
}

bool probe_agree(const std::vector<LatticeElement>& elems, const LatticeElement& A, const LatticeElement& B,
                 int probes, bool leq_only) {
    ProbeSet ps = make_probes(A.algebra(), elems, probes);
    double tol = A.algebra().tol * scale_of({&A.pos, &A.neg, &B.pos, &B.neg}) * 10.0;
    for (const auto& rho : ps.states) {
        double a = s_rep(A, rho), b = s_rep(B, rho);
        if (leq_only ? a > b + tol : std::abs(a - b) > tol) return false;
    }
    return true;
}

}  // namespace

Decision equivalent(const BasicElement& C, const BasicElement& D, int probes) {
    require_same(C.alg, D.alg);
    if (C.polarity != D.polarity) throw std::invalid_argument("equivalent: polarity mismatch");
    if (C.alg.kind == Kind::commutative) {
        if (C.polarity == Polarity::antibasic) return equivalent(C.negated(), D.negated(), probes);
        return {dominates_hull(C.gens, D.gens) && dominates_hull(D.gens, C.gens), true};
    }
    return equivalent(LatticeElement::from(C), LatticeElement::from(D), probes);
}

Decision equivalent(const LatticeElement& A, const LatticeElement& B, int probes) {
    require_same(A.algebra(), B.algebra());
    if (A.algebra().kind == Kind::commutative) {
        BasicElement x = minkowski_sum(A.pos, B.neg), y = minkowski_sum(B.pos, A.neg);
        return {dominates_hull(x.gens, y.gens) && dominates_hull(y.gens, x.gens), true};
    }
    return {probe_agree({A, B}, A, B, probes, false), false};
}

Decision less_equal(const LatticeElement& A, const LatticeElement& B, int probes) {
    require_same(A.algebra(), B.algebra());
    if (A.algebra().kind == Kind::commutative) {
        // C - D <= E - F  iff  inf(C+F) <= inf(E+D)
        BasicElement lo = minkowski_sum(A.pos, B.neg), hi = minkowski_sum(B.pos, A.neg);
        return {dominates_hull(hi.gens, lo.gens), true};
    }
    return {probe_agree({A, B}, A, B, probes, true), false};
}

// ---- arithmetic ----

BasicElement minkowski_sum(const BasicElement& C, const BasicElement& D) {
    require_same(C.alg, D.alg);
    if (C.polarity != D.polarity) throw std::invalid_argument("minkowski_sum: polarity mismatch");
    std::vector<Element> out;
    out.reserve(C.gens.size() * D.gens.size());
    for (const auto& c : C.gens)
        for (const auto& d : D.gens) out.push_back(c + d);
    return prune(BasicElement{C.alg, std::move(out), C.polarity});
}

BasicElement prune(const BasicElement& C) {
    // basic: g is redundant if some other h <= g; antibasic dually
    const auto& g = C.gens;
    const int n = static_cast<int>(g.size());
    std::vector<bool> drop(n, false);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n && !drop[i]; ++j) {
            if (i == j || drop[j]) continue;
            bool below = C.polarity == Polarity::basic ? g[j].leq(g[i]) : g[i].leq(g[j]);
            if (!below) continue;
            // ties keep the earlier generator
            bool tie = C.polarity == Polarity::basic ? g[i].leq(g[j]) : g[j].leq(g[i]);
            if (!tie || j < i) drop[i] = true;
        }
    }
    BasicElement r{C.alg, {}, C.polarity};
    for (int i = 0; i < n; ++i)
        if (!drop[i]) r.gens.push_back(g[i]);
    return r;
}

LatticeElement add(const LatticeElement& A, const LatticeElement& B) {
    return {minkowski_sum(A.pos, B.pos), minkowski_sum(A.neg, B.neg)};
}

LatticeElement scale(const LatticeElement& A, double alpha) {
    if (alpha < 0) throw std::invalid_argument("scale: negative factor (negate first)");
    LatticeElement r = A;
    for (auto* part : {&r.pos, &r.neg})
        for (auto& g : part->gens) g = g * alpha;
    if (alpha == 0.0) return LatticeElement::zero(A.algebra());
    return r;
}

LatticeElement negate(const LatticeElement& A) { return {A.neg, A.pos}; }

LatticeElement shift(const LatticeElement& A, double s) {
    LatticeElement r = A;
    Element u = Element::scalar(A.algebra(), s);
    for (auto& g : r.pos.gens) g = g + u;
    return r;
}

LatticeElement wedge(const LatticeElement& A, const LatticeElement& B) {
    require_same(A.algebra(), B.algebra());
    // (C - D) ∧ (E - F) = [(C + F) ∧ (E + D)] - (D + F), all parts shifted positive
    BasicElement cf = minkowski_sum(A.pos, B.neg);
    BasicElement ed = minkowski_sum(B.pos, A.neg);
    BasicElement df = minkowski_sum(A.neg, B.neg);
    const double s = cf.max_generator_norm() + ed.max_generator_norm();
    Element u = Element::scalar(A.algebra(), s);

    BasicElement pos{A.algebra(), {}, Polarity::basic};
    for (const auto& g : cf.gens) pos.gens.push_back(g + u);
    for (const auto& g : ed.gens) pos.gens.push_back(g + u);
    BasicElement neg = df;
    for (auto& g : neg.gens) g = g + u;
    return {prune(pos), neg};
}

LatticeElement vee(const LatticeElement& A, const LatticeElement& B) {
    return negate(wedge(negate(A), negate(B)));
}

PositiveDecomposition min_positive_decomposition(const LatticeElement& A) {
    LatticeElement z = LatticeElement::zero(A.algebra());
    return {vee(A, z), vee(negate(A), z)};
}

// ---- norms ----

Interval norm(const LatticeElement& A, int probes) {
    const Algebra& alg = A.algebra();
    if (alg.kind == Kind::commutative) {
        double v = pi(A).values.cwiseAbs().maxCoeff();
        return {v, v};
    }
    ProbeSet ps = make_probes(alg, {A}, probes);
    double lo = 0;
    for (const auto& rho : ps.states) lo = std::max(lo, std::abs(s_rep(A, rho)));
    // A <= r iff C <= D + r; sufficient: one c_i below every d_j + r
    auto bound = [](const BasicElement& X, const BasicElement& Y) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& x : X.gens) {
            double worst = -std::numeric_limits<double>::infinity();
            for (const auto& y : Y.gens) worst = std::max(worst, (x - y).max_eig());
            best = std::min(best, worst);
        }
        return best;
    };
    double hi = std::max({0.0, bound(A.pos, A.neg), bound(A.neg, A.pos)});
    return {lo, std::max(lo, hi)};
}

Interval norm(const BasicElement& C, int probes) { return norm(LatticeElement::from(C), probes); }

// ---- complements ----

Complements complements(const LatticeElement& P) {
    const Algebra& alg = P.algebra();
    const auto& C = P.pos.gens;
    const auto& D = P.neg.gens;
    Element zero = Element::zero(alg);
    Complements out;

    std::vector<Element> g, h;
    if (alg.kind == Kind::commutative) {
        for (const auto& c : C) {
            RVec v = RVec::Constant(alg.dim, -std::numeric_limits<double>::infinity());
            for (const auto& d : D) v = v.cwiseMax(c.values() - d.values());
            g.emplace_back(alg, v);
        }
        for (const auto& d : D) {
            RVec v = RVec::Constant(alg.dim, std::numeric_limits<double>::infinity());
            for (const auto& c : C) v = v.cwiseMin(c.values() - d.values());
            h.emplace_back(alg, v);
        }
    } else {
        double mD = std::numeric_limits<double>::infinity(), mC = mD;
        for (const auto& d : D) mD = std::min(mD, d.min_eig());
        for (const auto& c : C) mC = std::min(mC, c.min_eig());
        for (const auto& c : C) g.push_back(c - Element::scalar(alg, mD));
        for (const auto& d : D) h.push_back(Element::scalar(alg, mC) - d);
    }
    out.upper = LatticeElement::from(BasicElement::basic(g));
    out.lower = LatticeElement::from(BasicElement::antibasic(h));

    // elements above every h_j, and below every g_i
    std::vector<Element> above, below;
    if (alg.kind == Kind::commutative) {
        RVec mx = h.front().values(), mn = g.front().values();
        for (const auto& y : h) mx = mx.cwiseMax(y.values());
        for (const auto& z : g) mn = mn.cwiseMin(z.values());
        above.emplace_back(alg, mx);
        below.emplace_back(alg, mn);
    } else {
        for (const auto& yk : h) {
            Element acc = yk;
            for (const auto& yj : h) acc += positive_part(yj - yk);
            above.push_back(acc);
        }
        for (const auto& zk : g) {
            Element acc = zk;
            for (const auto& zi : g) acc = acc - positive_part(zk - zi);
            below.push_back(acc);
        }
    }
    out.lower_cc = LatticeElement::from(BasicElement::basic(above));
    out.upper_cc = LatticeElement::from(BasicElement::antibasic(below));
    return out;
}

// ---- pi and lifts ----

L1Image pi(const BasicElement& C) {
    if (C.alg.kind != Kind::commutative) throw std::invalid_argument("pi: commutative kind only (use state probes)");
    RVec v = C.gens.front().values();
    for (const auto& g : C.gens)
        v = C.polarity == Polarity::basic ? RVec(v.cwiseMin(g.values())) : RVec(v.cwiseMax(g.values()));
    return {C.alg, v};
}

L1Image pi(const LatticeElement& A) {
    L1Image p = pi(A.pos), n = pi(A.neg);
    return {p.alg, p.values - n.values};
}

LatticeElement cv_lift(const L1Image& v) {
    if (v.alg.kind != Kind::commutative) throw std::invalid_argument("cv_lift: commutative kind only");
    return LatticeElement::from(BasicElement::single(Element(v.alg, v.values)));
}

LatticeElement cc_lift(const L1Image& v) {
    if (v.alg.kind != Kind::commutative) throw std::invalid_argument("cc_lift: commutative kind only");
    return LatticeElement::from(BasicElement::antibasic({Element(v.alg, v.values)}));
}

// ---- subsystems ----

Subsystem Subsystem::coordinates(const Algebra& big, std::vector<int> block) {
    if (big.kind != Kind::commutative) throw std::invalid_argument("coordinate subsystem needs commutative kind");
    if (static_cast<int>(block.size()) != big.dim) throw std::invalid_argument("malformed subsystem: block map size");
    int k = -1;
    for (int b : block) {
        if (b < -1) throw std::invalid_argument("malformed subsystem: block index");
        k = std::max(k, b);
    }
    if (k < 0) throw std::invalid_argument("malformed subsystem: every coordinate dropped");
    std::vector<bool> used(k + 1, false);
    for (int b : block)
        if (b >= 0) used[b] = true;
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::invalid_argument("malformed subsystem: empty block");
    Subsystem s;
    s.big = big;
    s.small = Algebra::commutative(k + 1, big.tol);
    s.block = std::move(block);
    return s;
}

Subsystem Subsystem::block_diagonal(const Algebra& big, const Mat& frame, std::vector<int> sizes) {
    if (big.kind != Kind::matrix) throw std::invalid_argument("block subsystem needs matrix kind");
    int total = 0;
    for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("malformed subsystem: block size");
        total += s;
    }
    if (total != big.dim || frame.rows() != big.dim || frame.cols() != big.dim)
        throw std::invalid_argument("malformed subsystem: sizes do not match dimension");
    if ((frame.adjoint() * frame - Mat::Identity(big.dim, big.dim)).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("malformed subsystem: frame is not unitary");
    Subsystem s;
    s.big = big;
    s.small = big;
    s.frame = frame;
    s.block_sizes = std::move(sizes);
    return s;
}

Element Subsystem::include(const Element& v) const {
    if (big.kind == Kind::matrix) return v;
    require_same(small, v.algebra());
    RVec out = RVec::Zero(big.dim);
    for (int t = 0; t < big.dim; ++t)
        if (block[t] >= 0) out(t) = v.values()(block[t]);
    return Element(big, out);
}

Element Subsystem::pinch(const Element& x) const {
    if (big.kind != Kind::matrix) throw std::invalid_argument("pinch: matrix kind only");
    Mat y = frame.adjoint() * x.matrix() * frame;
    Mat z = Mat::Zero(big.dim, big.dim);
    int off = 0;
    for (int s : block_sizes) {
        z.block(off, off, s, s) = y.block(off, off, s, s);
        off += s;
    }
    Mat back = frame * z * frame.adjoint();
    return Element(big, Mat((back + back.adjoint()) * 0.5));
}

Element Subsystem::ceil(const Element& x) const {
    require_same(big, x.algebra());
    if (big.kind == Kind::matrix) {
        Element p = pinch(x);
        return p + Element::scalar(big, (x - p).max_eig());
    }
    RVec v = RVec::Constant(small.dim, -std::numeric_limits<double>::infinity());
    for (int t = 0; t < big.dim; ++t)
        if (block[t] >= 0) v(block[t]) = std::max(v(block[t]), x.values()(t));
    return Element(small, v);
}

Element Subsystem::floor(const Element& x) const {
    require_same(big, x.algebra());
    if (big.kind == Kind::matrix) {
        Element p = pinch(x);
        return p + Element::scalar(big, (x - p).min_eig());
    }
    RVec v = RVec::Constant(small.dim, std::numeric_limits<double>::infinity());
    for (int t = 0; t < big.dim; ++t)
        if (block[t] >= 0) v(block[t]) = std::min(v(block[t]), x.values()(t));
    return Element(small, v);
}

namespace {

BasicElement map_gens(const BasicElement& C, const Subsystem& sub, bool up) {
    std::vector<Element> out;
    for (const auto& g : C.gens) out.push_back(up ? sub.ceil(g) : sub.floor(g));
    return prune(BasicElement{sub.small, std::move(out), C.polarity});
}

}  // namespace

LatticeElement restrict_basic(const LatticeElement& A, const Subsystem& sub) {
    require_same(sub.big, A.algebra());
    return {map_gens(A.pos, sub, true), map_gens(A.neg, sub, false)};
}

LatticeElement restrict_antibasic(const LatticeElement& A, const Subsystem& sub) {
    require_same(sub.big, A.algebra());
    return {map_gens(A.pos, sub, false), map_gens(A.neg, sub, true)};
}

LatticeElement include(const LatticeElement& A, const Subsystem& sub) {
    LatticeElement r;
    r.pos = BasicElement{sub.big, {}, A.pos.polarity};
    r.neg = BasicElement{sub.big, {}, A.neg.polarity};
    for (const auto& g : A.pos.gens) r.pos.gens.push_back(sub.include(g));
    for (const auto& g : A.neg.gens) r.neg.gens.push_back(sub.include(g));
    return r;
}

}  // namespace oplat

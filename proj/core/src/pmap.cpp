#include "oplat/pmap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace oplat {

namespace {

double ptol(const Algebra& alg) { return std::max(1e-8, 1e3 * alg.tol); }

Projection proj_sum(const Projection& e, const Projection& f) { return Projection(e.base() + f.base()); }

bool same(const Projection& a, const Projection& b) { return a.equals(b, ptol(a.algebra())); }

}  // namespace

// ---- decorations ----

const char* decoration_name(Decoration d) {
    switch (d) {
        case Decoration::o: return "o";
        case Decoration::co: return "co";
        case Decoration::c: return "c";
        case Decoration::a: return "a";
        case Decoration::a_wedge: return "a-wedge";
        case Decoration::a_vee: return "a-vee";
        case Decoration::wedge: return "wedge";
        case Decoration::vee: return "vee";
        case Decoration::x: return "x";
        case Decoration::ax: return "ax";
        case Decoration::xx: return "xx";
    }
    return "?";
}

Decoration parse_decoration(const std::string& s) {
    static const std::map<std::string, Decoration> names = {
        {"o", Decoration::o},         {"co", Decoration::co},          {"c", Decoration::c},
        {"a", Decoration::a},         {"a-wedge", Decoration::a_wedge}, {"a∧", Decoration::a_wedge},
        {"a^", Decoration::a_wedge},  {"a-vee", Decoration::a_vee},     {"a∨", Decoration::a_vee},
        {"av", Decoration::a_vee},    {"wedge", Decoration::wedge},     {"∧", Decoration::wedge},
        {"vee", Decoration::vee},     {"∨", Decoration::vee},           {"x", Decoration::x},
        {"ax", Decoration::ax},       {"xx", Decoration::xx}};
    auto it = names.find(s);
    if (it == names.end()) throw std::invalid_argument("unknown decoration: " + s);
    return it->second;
}

std::vector<Decoration> parse_decorations(const std::string& csv) {
    std::vector<Decoration> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_decoration(item));
    return out;
}

// ---- tables ----

std::optional<Projection> PMapTable::lookup(const Projection& p) const {
    if (rule) return rule(p);
    for (size_t i = 0; i < domain.size(); ++i)
        if (same(domain[i], p)) return values[i];
    return std::nullopt;
}

Projection PMapTable::operator()(const Projection& p) const {
    auto v = lookup(p);
    if (!v) throw std::out_of_range("chain projection missing from domain");
    return *v;
}

void PMapTable::validate() const {
    if (!rule && domain.size() != values.size()) throw std::invalid_argument("pmap table: domain/value size mismatch");
    if (auto z = lookup(Projection::zero(domain_alg)); z && z->rank() != 0)
        throw std::invalid_argument("pmap table: s(0) != 0");
    if (auto u = lookup(Projection::unit(domain_alg)); u && !same(*u, unit_image))
        throw std::invalid_argument("pmap table: s(1) != unit image");
    for (size_t i = 0; i < domain.size(); ++i)
        for (size_t j = 0; j < domain.size(); ++j)
            if (i != j && domain[i].leq(domain[j]) && !values[i].leq(values[j]))
                throw std::invalid_argument("pmap table: not monotone");
}

PMapTable PMapTable::identity(const Algebra& alg) {
    PMapTable t;
    t.domain_alg = t.codomain_alg = alg;
    t.rule = [](const Projection& p) { return p; };
    t.unit_image = Projection::unit(alg);
    t.claimed = {Decoration::o, Decoration::co,    Decoration::c,    Decoration::a, Decoration::a_wedge,
                 Decoration::a_vee, Decoration::wedge, Decoration::vee, Decoration::ax, Decoration::xx};
    t.name = "identity";
    return t;
}

PMapTable PMapTable::collapse(const Algebra& alg, const Projection& r) {
    PMapTable t;
    t.domain_alg = t.codomain_alg = alg;
    const int n = alg.dim;
    t.rule = [r, alg, n](const Projection& p) {
        if (p.rank() == 0) return Projection::zero(alg);
        if (p.rank() == n) return Projection::unit(alg);
        return r;
    };
    t.unit_image = Projection::unit(alg);
    t.name = "collapse";
    return t;
}

PMapTable PMapTable::diagonal_dominant() {
    const Algebra alg = Algebra::matrix(2);
    PMapTable t;
    t.domain_alg = t.codomain_alg = alg;
    t.rule = [alg](const Projection& p) {
        if (p.rank() == 0) return Projection::zero(alg);
        if (p.rank() == 2) return Projection::unit(alg);
        const Mat& m = p.base().matrix();
        const double tol = 1e-12;
        double d = m(0, 0).real() - m(1, 1).real();
        bool first = d > tol || (std::abs(d) <= tol && (m(0, 1).real() > tol ||
                                                         (std::abs(m(0, 1).real()) <= tol && m(0, 1).imag() > 0)));
        Mat e = Mat::Zero(2, 1);
        e(first ? 0 : 1, 0) = 1;
        return Projection::from_basis(alg, e);
    };
    t.unit_image = Projection::unit(alg);
    t.claimed = {Decoration::o, Decoration::c, Decoration::co};
    t.name = "diagonal-dominant";
    return t;
}

Projection indicator(const Algebra& alg, uint32_t mask) {
    RVec v(alg.dim);
    for (int i = 0; i < alg.dim; ++i) v(i) = (mask >> i) & 1u ? 1.0 : 0.0;
    return Projection(Element(alg, v));
}

uint32_t mask_of(const Projection& p) {
    const RVec d = p.base().dense().diagonal().real();
    uint32_t m = 0;
    for (int i = 0; i < d.size(); ++i)
        if (d(i) > 0.5) m |= 1u << i;
    return m;
}

std::vector<Projection> boolean_family(const Algebra& alg) {
    if (alg.kind != Kind::commutative || alg.dim > 20) throw std::invalid_argument("boolean_family: C(m), m <= 20");
    std::vector<Projection> out;
    for (uint32_t s = 0; s < (1u << alg.dim); ++s) out.push_back(indicator(alg, s));
    return out;
}

PMapTable PMapTable::boolean(int m, int k, const std::vector<uint32_t>& values) {
    if (values.size() != (1u << m)) throw std::invalid_argument("boolean table: need 2^m values");
    PMapTable t;
    t.domain_alg = Algebra::commutative(m);
    t.codomain_alg = Algebra::commutative(k);
    t.domain = boolean_family(t.domain_alg);
    for (uint32_t v : values) {
        if (k < 32 && (v >> k) != 0) throw std::invalid_argument("boolean table: value outside codomain");
        t.values.push_back(indicator(t.codomain_alg, v));
    }
    t.unit_image = t.values.back();
    t.name = "boolean";
    return t;
}

// ---- extension ----

Element extend_pmap(const PMapTable& s, const Element& x) {
    require_same(s.domain_alg, x.algebra());
    if (!is_positive(x)) throw std::invalid_argument("extend_pmap: negative input");
    Element out = Element::zero(s.codomain_alg);
    for (const auto& term : chain_decomposition(x)) out += s(term.p).base() * term.alpha;
    return out;
}

Element extend_homogenized(const PMapTable& s, const Element& x) {
    return extend_pmap(s, positive_part(x)) - extend_pmap(s, negative_part(x));
}

// ---- decoration checks ----

std::vector<ProjectionPair> all_pairs(const std::vector<Projection>& family) {
    std::vector<ProjectionPair> out;
    for (size_t i = 0; i < family.size(); ++i)
        for (size_t j = i; j < family.size(); ++j) out.emplace_back(family[i], family[j]);
    return out;
}

DecorationReport check_decoration(const PMapTable& s, Decoration d, const std::vector<ProjectionPair>& test_set,
                                  const MixedOrder* order) {
    if ((d == Decoration::x || d == Decoration::ax || d == Decoration::xx) && !order)
        throw std::invalid_argument("check_decoration: x/ax/xx need the P₋ split and ≺");
    DecorationReport rep;
    rep.decoration = d;
    const Projection one = Projection::unit(s.codomain_alg);
    auto fail = [&](int i, const std::string& what) {
        rep.failures.push_back({i, i, what});
    };

    for (size_t i = 0; i < test_set.size(); ++i) {
        const Projection& p = test_set[i].first;
        const Projection& q = test_set[i].second;
        const PairFlags flags = predicates(p, q);
        const int idx = static_cast<int>(i);
        auto applies = [&](bool hyp) {
            if (hyp) ++rep.checked;
            else ++rep.vacuous;
            return hyp;
        };
        switch (d) {
            case Decoration::o:
                if (applies(flags.orthogonal) && !predicates(s(p), s(q)).orthogonal) fail(idx, "images not orthogonal");
                break;
            case Decoration::co:
                if (applies(flags.coorthogonal) && !predicates(s(p), s(q)).coorthogonal)
                    fail(idx, "images not coorthogonal");
                break;
            case Decoration::c:
                applies(true);
                for (const Projection* e : {&p, &q})
                    if (!same(proj_sum(s(*e), s(e->complement())), one)) fail(idx, "s(p) + s(p^c) != 1");
                break;
            case Decoration::a:
                if (applies(flags.commuting) && !predicates(s(p), s(q)).commuting) fail(idx, "images do not commute");
                break;
            case Decoration::a_wedge:
            case Decoration::wedge:
                if (applies(d == Decoration::wedge || flags.commuting)) {
                    if (d == Decoration::a_wedge && !predicates(s(p), s(q)).commuting) fail(idx, "images do not commute");
                    if (!same(s(wedge_exact(p, q)), wedge_exact(s(p), s(q)))) fail(idx, "s(p∧q) != s(p)∧s(q)");
                }
                break;
            case Decoration::a_vee:
            case Decoration::vee:
                if (applies(d == Decoration::vee || flags.commuting)) {
                    if (d == Decoration::a_vee && !predicates(s(p), s(q)).commuting) fail(idx, "images do not commute");
                    if (!same(s(vee(p, q)), vee(s(p), s(q)))) fail(idx, "s(p∨q) != s(p)∨s(q)");
                }
                break;
            case Decoration::x:
            case Decoration::ax: {
                bool any = false;
                for (int dir = 0; dir < 2; ++dir) {
                    const Projection& e = dir == 0 ? p : q;
                    const Projection& f = dir == 0 ? q : p;
                    if (!order->minus(e) || !order->minus(f) || !order->precedes(e, f)) continue;
                    if (d == Decoration::ax && !flags.commuting) continue;
                    any = true;
                    const Projection fc = f.complement(), ec = e.complement();
                    bool lhs = same(s(vee(e, fc)), vee(s(e), s(fc)));
                    bool rhs = same(s(wedge_exact(ec, f)), wedge_exact(s(ec), s(f)));
                    if (lhs != rhs) fail(idx, "join and meet conditions disagree");
                }
                applies(any);
                break;
            }
            case Decoration::xx: {
                const Projection j = vee(p, q);
                if (applies(order->minus(p) && order->minus(q) && order->minus(j)) && !same(vee(s(p), s(q)), s(j)))
                    fail(idx, "s(e)∨s(f) != s(e∨f)");
                break;
            }
        }
        if ((d == Decoration::ax || d == Decoration::xx) && flags.commuting) {
            rep.implied_a_checked = true;
            if (!predicates(s(p), s(q)).commuting) {
                rep.implied_a_holds = false;
                fail(idx, "derived decoration a fails");
            }
        }
    }
    return rep;
}

// ---- Schwarz suites ----

const char* schwarz_kind_name(SchwarzKind k) {
    switch (k) {
        case SchwarzKind::ordinary: return "ordinary";
        case SchwarzKind::concave_normal: return "concave-normal";
        case SchwarzKind::convex_reverse: return "convex-reverse";
    }
    return "?";
}

SchwarzSuiteReport schwarz_suite(const PMapTable& s, SchwarzKind kind, const std::vector<NormalInstance>& instances) {
    SchwarzSuiteReport rep;
    rep.kind = kind;
    const double tol = ptol(s.domain_alg);

    // prerequisites on the chain projections the instances touch
    std::vector<Projection> family;
    auto add = [&](const Projection& p) {
        for (const auto& f : family)
            if (same(f, p)) return;
        family.push_back(p);
    };
    for (const auto& inst : instances) {
        for (const Element* part : {&inst.re, &inst.im}) {
            for (const Element& y : {positive_part(*part), negative_part(*part)})
                for (const auto& t : chain_decomposition(y)) {
                    add(t.p);
                    add(t.p.complement());
                }
        }
        if (family.size() > 48) break;
    }
    std::vector<Decoration> pre;
    if (kind == SchwarzKind::ordinary) pre = {Decoration::o};
    else if (kind == SchwarzKind::concave_normal) pre = {Decoration::a, Decoration::a_wedge};
    else pre = {Decoration::a, Decoration::a_vee};
    const auto pairs = all_pairs(family);
    for (Decoration d : pre) {
        rep.prerequisites.push_back(check_decoration(s, d, pairs));
        rep.prerequisites_ok = rep.prerequisites_ok && rep.prerequisites.back().passed();
    }

    rep.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& inst : instances) {
        const Element& a = inst.re;
        const Element& b = inst.im;
        double margin;
        if (kind == SchwarzKind::ordinary) {
            Element sx = extend_homogenized(s, a);
            margin = (extend_pmap(s, a.square()) - sx.square()).min_eig();
        } else {
            Mat ad = a.dense(), bd = b.dense();
            if ((ad * bd - bd * ad).cwiseAbs().maxCoeff() > tol)
                throw std::invalid_argument("schwarz_suite: instance is not normal");
            Mat X = extend_homogenized(s, a).dense() + cplx(0, 1) * extend_homogenized(s, b).dense();
            Mat xx = X * X.adjoint();
            Mat lhs = extend_pmap(s, a.square() + b.square()).dense();
            Mat diff = kind == SchwarzKind::concave_normal ? Mat(lhs - xx) : Mat(xx - lhs);
            Eigen::SelfAdjointEigenSolver<Mat> es((diff + diff.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
            margin = es.eigenvalues()(0);
        }
        rep.margins.push_back(margin);
        rep.min_margin = std::min(rep.min_margin, margin);
        double scale = std::max(1.0, inst.re.norm() * inst.re.norm() + inst.im.norm() * inst.im.norm());
        if (margin < -tol * scale) ++rep.violations;
    }
    if (instances.empty()) rep.min_margin = 0;
    return rep;
}

// ---- coherent lift ----

uint32_t apply_q(const QSpec& q, uint32_t x_mask) {
    uint32_t out = 0;
    for (int y = 0; y < q.codomain_points; ++y) {
        auto it = std::find(q.labels.begin(), q.labels.end(), y);
        if (it != q.labels.end() && ((x_mask >> (it - q.labels.begin())) & 1u)) out |= 1u << y;
    }
    return out;
}

CoherentLift coherent_lift(const QSpec& q, uint64_t seed) {
    const int m = q.codomain_points;
    const int nx = static_cast<int>(q.labels.size());
    if (m < 1 || nx > 20 || m > 12) throw std::invalid_argument("coherent_lift: sizes out of range");
    std::vector<int> rep(m, -1);
    for (int x = 0; x < nx; ++x) {
        int y = q.labels[x];
        if (y < 0 || y >= m) throw std::invalid_argument("coherent_lift: label out of range");
        if (rep[y] < 0) rep[y] = x;
    }
    for (int y = 0; y < m; ++y)
        if (rep[y] < 0) throw std::invalid_argument("q-spec not surjective");

    const uint32_t fullY = (1u << m) - 1, fullX = (1u << nx) - 1;
    uint32_t reps = 0;
    for (int y = 0; y < m; ++y) reps |= 1u << rep[y];
    const uint32_t free = fullX & ~reps;

    std::vector<uint32_t> pairs;
    for (uint32_t t = 0; t <= fullY; ++t) {
        uint32_t tc = fullY & ~t;
        int a = std::popcount(t), b = std::popcount(tc);
        if (a < b || (a == b && t < tc)) pairs.push_back(t);
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](uint32_t a, uint32_t b) { return std::popcount(a) < std::popcount(b); });

    std::vector<uint32_t> s(fullY + 1, 0);
    std::vector<bool> def(fullY + 1, false);
    s[fullY] = fullX;
    def[0] = def[fullY] = true;
    CoherentLift out;
    Rng rng(seed);
    auto lift_of = [&](uint32_t t) {
        uint32_t e = 0;
        for (int y = 0; y < m; ++y)
            if ((t >> y) & 1u) e |= 1u << rep[y];
        // the arbitrary part of the chosen preimage
        uint32_t noise = static_cast<uint32_t>(rng()) & free;
        return e | noise;
    };

    for (uint32_t t : pairs) {
        if (t == 0) continue;
        const uint32_t tc = fullY & ~t;
        uint32_t st;
        int atoms_left = 0;
        if (std::popcount(t) == 1)
            for (int y = 0; y < m; ++y)
                if (!def[1u << y] && (1u << y) != t) ++atoms_left;
        if (std::popcount(t) == 1 && m > 1 && atoms_left == 0) {
            // last atom: atoms must add up to 1
            uint32_t others = 0;
            for (int y = 0; y < m; ++y)
                if ((1u << y) != t) others |= s[1u << y];
            st = fullX & ~others;
        } else {
            uint32_t lower = 0, upper = fullX;
            for (uint32_t u = 0; u <= fullY; ++u) {
                if (!def[u]) continue;
                if ((u & ~t) == 0) lower |= s[u];
                if ((t & ~u) == 0) upper &= s[u];
            }
            st = (lower | lift_of(t)) & upper;
        }
        s[t] = st;
        s[tc] = fullX & ~st;
        def[t] = def[tc] = true;
        out.order.push_back(static_cast<int>(t));
    }

    out.lift = s;
    std::vector<uint32_t> vals(s.begin(), s.end());
    out.table = PMapTable::boolean(m, nx, vals);
    out.table.claimed = {Decoration::o, Decoration::co, Decoration::c, Decoration::a,
                         Decoration::a_wedge, Decoration::a_vee, Decoration::wedge, Decoration::vee};
    out.table.name = "coherent-lift";
    return out;
}

LiftCheck verify_lift(const QSpec& q, const CoherentLift& s) {
    LiftCheck c;
    const uint32_t fullY = (1u << q.codomain_points) - 1;
    const uint32_t fullX = (1u << q.labels.size()) - 1;
    const auto& L = s.lift;
    for (uint32_t t = 0; t <= fullY; ++t) {
        if (apply_q(q, L[t]) != t) c.section = false;
        if (L[fullY & ~t] != (fullX & ~L[t])) c.complemented = false;
        for (uint32_t u = 0; u <= fullY; ++u) {
            if ((t & ~u) == 0 && (L[t] & ~L[u]) != 0) c.monotone = false;
            if (L[t & u] != (L[t] & L[u])) c.meets = false;
            if (L[t | u] != (L[t] | L[u])) c.joins = false;
        }
    }
    return c;
}

// ---- signatures ----

int Signature::classify(const Projection& e) const {
    const Mat P = e.base().dense();
    const int n = static_cast<int>(P.rows());
    const double tol = 1e-12;
    auto sign = [](double v) { return v > 0 ? 1 : -1; };
    double d = xi.dot(P * xi).real() - 0.5;
    if (std::abs(d) > tol) return sign(d);
    d = eta.dot(P * eta).real() - 0.5;
    if (std::abs(d) > tol) return sign(d);
    d = e.rank() - 0.5 * n;
    if (std::abs(d) > tol) return sign(d);
    Mat M = P - 0.5 * Mat::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (std::abs(M(i, j).real()) > tol) return sign(M(i, j).real());
            if (std::abs(M(i, j).imag()) > tol) return sign(M(i, j).imag());
        }
    return -1;
}

Signature Signature::random(Rng& rng, int n) { return {random_unit_vector(rng, n), random_unit_vector(rng, n)}; }

namespace {

bool polar_violation(const Signature& sig, const Projection& e, const Projection& f) {
    if (!e.orthogonal(f, ptol(e.algebra()))) return false;
    return sig.plus(proj_sum(e, f)) && !sig.plus(e) && !sig.plus(f);
}

}  // namespace

SignatureProbe signature_probe(const Signature& sig, const std::vector<ProjectionPair>& pairs) {
    SignatureProbe out;
    for (const auto& [e, f] : pairs) {
        ++out.samples;
        if (polar_violation(sig, e, f)) {
            out.polar = false;
            out.violation = ProjectionPair{e, f};
            return out;
        }
    }
    return out;
}

SignatureProbe signature_search(const Signature& sig, int n, long long samples, uint64_t seed) {
    const Algebra alg = Algebra::matrix(n);
    Rng rng(seed);
    SignatureProbe out;
    for (long long i = 0; i < samples; ++i) {
        Mat U = random_unitary(rng, n);
        Projection e = Projection::from_basis(alg, U.col(0));
        Projection f = Projection::from_basis(alg, U.col(1));
        ++out.samples;
        if (polar_violation(sig, e, f)) {
            out.polar = false;
            out.violation = ProjectionPair{e, f};
            return out;
        }
    }
    return out;
}

// ---- filters ----

FiniteLattice FiniteLattice::boolean(int m) {
    if (m < 0 || m > 8) throw std::invalid_argument("FiniteLattice::boolean: m <= 8");
    FiniteLattice L;
    L.size = 1 << m;
    const int full = L.size - 1;
    L.meet.assign(L.size, std::vector<int>(L.size));
    L.join = L.meet;
    L.complement.resize(L.size);
    for (int a = 0; a < L.size; ++a) {
        L.complement[a] = full & ~a;
        for (int b = 0; b < L.size; ++b) {
            L.meet[a][b] = a & b;
            L.join[a][b] = a | b;
        }
    }
    L.bottom = 0;
    L.top = full;
    return L;
}

std::vector<bool> principal_filter(const FiniteLattice& L, int a) {
    std::vector<bool> f(L.size);
    for (int x = 0; x < L.size; ++x) f[x] = L.leq(a, x);
    return f;
}

void validate_filter(const FiniteLattice& L, const std::vector<bool>& F) {
    if (static_cast<int>(F.size()) != L.size) throw std::invalid_argument("F is not a filter: size mismatch");
    if (!F[L.top]) throw std::invalid_argument("F is not a filter: missing 1");
    for (int e = 0; e < L.size; ++e) {
        if (!F[e]) continue;
        if (F[L.complement[e]]) throw std::invalid_argument("F is not a filter: contains e and e^c");
        for (int f = 0; f < L.size; ++f) {
            if (L.leq(e, f) && !F[f]) throw std::invalid_argument("F is not a filter: not upward closed");
            if (F[f] && !F[L.meet[e][f]]) throw std::invalid_argument("F is not a filter: not closed under ∧");
        }
    }
}

FilterReport filter_ops(const FiniteLattice& L, const std::vector<bool>& F) {
    validate_filter(L, F);
    std::vector<int> parent(L.size);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int f = 0; f < L.size; ++f) {
        if (!F[f]) continue;
        for (int p = 0; p < L.size; ++p) {
            int a = find(p), b = find(L.join[p][L.complement[f]]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    FilterReport r;
    r.cls.assign(L.size, -1);
    std::map<int, int> ids;
    for (int p = 0; p < L.size; ++p) {
        int root = find(p);
        auto it = ids.find(root);
        if (it == ids.end()) it = ids.emplace(root, static_cast<int>(ids.size())).first;
        r.cls[p] = it->second;
    }
    r.classes = static_cast<int>(ids.size());

    const int c = r.classes;
    std::vector<int> cmp(c, -1);
    std::vector<std::vector<int>> cm(c, std::vector<int>(c, -1)), cj = cm;
    for (int p = 0; p < L.size; ++p) {
        int k = r.cls[L.complement[p]];
        if (cmp[r.cls[p]] < 0) cmp[r.cls[p]] = k;
        else if (cmp[r.cls[p]] != k) r.complement_compatible = false;
        for (int q = 0; q < L.size; ++q) {
            int& m = cm[r.cls[p]][r.cls[q]];
            int mv = r.cls[L.meet[p][q]];
            if (m < 0) m = mv;
            else if (m != mv) r.meet_compatible = false;
            int& j = cj[r.cls[p]][r.cls[q]];
            int jv = r.cls[L.join[p][q]];
            if (j < 0) j = jv;
            else if (j != jv) r.join_compatible = false;
        }
    }
    r.order.assign(c, std::vector<bool>(c, false));
    for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b) r.order[a][b] = cm[a][b] == a;

    for (int f = 0; f < L.size && r.ideal; ++f) {
        if (!F[f]) continue;
        for (int p = 0; p < L.size; ++p) {
            int fp = L.join[L.meet[f][p]][L.meet[f][L.complement[p]]];
            if (!F[fp]) {
                r.ideal = false;
                break;
            }
        }
    }
    r.ultra = true;
    for (int p = 0; p < L.size; ++p)
        if (!F[p] && !F[L.complement[p]]) r.ultra = false;
    for (int a = 0; a < L.size; ++a) {
        if (a == L.bottom) continue;
        bool atom = true;
        for (int b = 0; b < L.size; ++b)
            if (b != a && b != L.bottom && L.leq(b, a)) atom = false;
        if (atom && principal_filter(L, a) == F) r.principal_atom = a;
    }
    return r;
}

// ---- Γ ----

namespace {

Mat rank_one(const Vec& v) {
    Vec u = v / v.norm();
    return u * u.adjoint();
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

Mat GammaSetup::r_gamma(const Vec& u, const Vec& x) const {
    Projection p = Projection::from_basis(Algebra::matrix(2), u);
    return tau.plus(p) ? rank_one(x) : Mat(Mat::Zero(k, k));
}

ForcingCheck force_minimal(const GammaSetup& g, const Vec& psi, const std::vector<Mat>& family) {
    const int k = g.k;
    ForcingCheck out;
    Mat Psi(2, k);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < k; ++b) Psi(a, b) = psi(a * k + b);
    Eigen::JacobiSVD<Mat> svd(Psi, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv.size() < 2 || sv(1) <= 1e-9 * sv(0)) {
        out.in_gamma = true;
        out.value = g.r_gamma(svd.matrixU().col(0), svd.matrixV().col(0).conjugate());
        return out;
    }
    const Mat r = rank_one(psi);
    bool have = false;
    for (const Mat& U : family) {
        Vec u = U.col(0), up = U.col(1);
        Vec x = (u.adjoint() * Psi).transpose();
        Vec y = (up.adjoint() * Psi).transpose();
        Mat D = kron(rank_one(u), rank_one(x)) + kron(rank_one(up), rank_one(y));
        Mat v = g.tau.plus(Projection::from_basis(Algebra::matrix(2), u)) ? rank_one(x) : rank_one(y);
        Eigen::SelfAdjointEigenSolver<Mat> es(D - r, Eigen::EigenvaluesOnly);
        double margin = es.eigenvalues()(0);
        if (!have) {
            out.u1 = U;
            out.d1 = D;
            out.v1 = v;
            out.dominance_margin = margin;
            have = true;
        } else if ((v - out.v1).norm() > 1e-6) {
            out.u2 = U;
            out.d2 = D;
            out.v2 = v;
            out.dominance_margin = std::min(out.dominance_margin, margin);
            out.forced = true;
            return out;
        }
    }
    return out;
}

ObstructionWitness gamma_counterexample(int k, const Signature& tau, uint64_t seed) {
    if (k < 2 || k > 4) throw std::invalid_argument("gamma_counterexample: 2 <= k <= 4");
    const int n = 2 * k;
    GammaSetup g{k, tau};
    Rng rng(seed);
    ObstructionWitness w;
    w.k = k;
    w.seed = seed;

    for (int attempt = 0; attempt < 16; ++attempt) {
        Mat W = random_unitary(rng, n);
        w.basis.clear();
        w.checks.clear();
        bool ok = true;
        for (int c = 0; c < n && ok; ++c) {
            Vec psi = W.col(c);
            std::vector<Mat> family{Mat::Identity(2, 2)};
            ForcingCheck fc;
            // a tie on the sampled family is re-randomized with fresh conjugators
            for (int round = 0; round < 8; ++round) {
                for (int i = 0; i < 32; ++i) family.push_back(random_unitary(rng, 2));
                fc = force_minimal(g, psi, family);
                if (fc.in_gamma || fc.forced) break;
            }
            if (fc.in_gamma) ok = false;
            w.basis.push_back(psi);
            w.checks.push_back(fc);
        }
        if (!ok) continue;
        Mat sum = Mat::Zero(n, n), gram(n, n);
        for (int i = 0; i < n; ++i) {
            sum += rank_one(w.basis[i]);
            for (int j = 0; j < n; ++j) gram(i, j) = w.basis[i].dot(w.basis[j]);
        }
        w.orthogonal = (gram - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10;
        w.sums_to_one = (sum - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10;
        w.all_outside_gamma = std::none_of(w.checks.begin(), w.checks.end(), [](const auto& c) { return c.in_gamma; });
        w.all_forced = std::all_of(w.checks.begin(), w.checks.end(), [](const auto& c) {
            return c.forced && c.dominance_margin >= -1e-10;
        });
        return w;
    }
    throw std::runtime_error("gamma_counterexample: no generic basis found");
}

// ---- winding ----

int winding_obstruction(const Symbol& s) {
    if (s.coeffs.empty()) throw std::invalid_argument("winding_obstruction: empty symbol");
    double scale = 0;
    for (const auto& c : s.coeffs) scale += std::abs(c);
    const int N = kWindingGrid;
    auto eval = [&](int j) {
        const double t = 2.0 * std::numbers::pi * j / N;
        const cplx z = std::polar(1.0, t);
        cplx acc = 0;
        for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) acc = acc * z + *it;
        return acc * std::polar(1.0, t * s.min_degree);
    };
    cplx first = eval(0), prev = first;
    double total = 0;
    for (int j = 1; j <= N; ++j) {
        cplx cur = j == N ? first : eval(j);
        if (std::abs(cur) <= 1e-9 * scale) throw std::invalid_argument("symbol vanishes on the circle");
        total += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace oplat

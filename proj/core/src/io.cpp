#include "oplat/io.hpp"

#include <stdexcept>

namespace oplat::io {

namespace {

json entries_of(const Mat& m) {
    json out = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
    return out;
}

cplx scalar_from(const json& e) {
    if (e.is_number()) return e.get<double>();
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("entry must be [re, im]");
    return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

json to_json(const Algebra& a) {
    return {{"kind", a.kind == Kind::matrix ? "matrix" : "commutative"}, {"dim", a.dim}, {"tol", a.tol}};
}

Algebra algebra_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int dim = j.at("dim").get<int>();
    const double tol = j.value("tol", 1e-10);
    if (dim < 1 || tol < 0) throw std::invalid_argument("algebra: dim >= 1 and tol >= 0 required");
    if (kind == "matrix") return Algebra::matrix(dim, tol);
    if (kind == "commutative") return Algebra::commutative(dim, tol);
    throw std::invalid_argument("algebra: unknown kind " + kind);
}

json to_json(const Element& x) {
    if (x.kind() == Kind::commutative) {
        json v = json::array();
        for (int i = 0; i < x.values().size(); ++i) v.push_back(x.values()(i));
        return {{"spectrum", x.values().size()}, {"values", v}};
    }
    return {{"dim", x.matrix().rows()}, {"entries", entries_of(x.matrix())}};
}

Element element_from_json(const Algebra& alg, const json& j) {
    const int n = alg.dim;
    if (alg.kind == Kind::commutative) {
        const auto& v = j.at("values");
        if (j.value("spectrum", n) != n || static_cast<int>(v.size()) != n)
            throw std::invalid_argument("element: wrong tuple length");
        RVec r(n);
        for (int i = 0; i < n; ++i) r(i) = v[i].get<double>();
        return Element(alg, r);
    }
    const auto& e = j.at("entries");
    if (j.value("dim", n) != n || static_cast<int>(e.size()) != n * n)
        throw std::invalid_argument("element: expected dim*dim entries");
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m(i, k) = scalar_from(e[i * n + k]);
    return Element(alg, m);
}

json to_json(const Projection& p) { return to_json(p.base()); }

Projection projection_from_json(const Algebra& alg, const json& j) { return Projection(element_from_json(alg, j)); }

json to_json(const BasicElement& b) {
    json gens = json::array();
    for (const auto& g : b.gens) gens.push_back(to_json(g));
    return {{"algebra", to_json(b.alg)},
            {"polarity", b.polarity == Polarity::basic ? "basic" : "antibasic"},
            {"generators", gens}};
}

BasicElement basic_from_json(const json& j) {
    Algebra alg = algebra_from_json(j.at("algebra"));
    std::vector<Element> gens;
    for (const auto& g : j.at("generators")) gens.push_back(element_from_json(alg, g));
    if (gens.empty()) throw std::invalid_argument("basic element: no generators");
    const std::string pol = j.value("polarity", "basic");
    if (pol == "basic") return BasicElement::basic(gens);
    if (pol == "antibasic") return BasicElement::antibasic(gens);
    throw std::invalid_argument("basic element: unknown polarity " + pol);
}

json to_json(const Vec& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("vector: expected array of [re, im]");
    Vec v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = scalar_from(j[i]);
    return v;
}

json to_json(const State& s) {
    switch (s.type()) {
        case State::Type::point: return {{"kind", "point"}, {"index", s.index()}};
        case State::Type::vector: return {{"kind", "vector"}, {"xi", to_json(s.parts().front().second)}};
        case State::Type::mixture: {
            json parts = json::array();
            for (const auto& [w, xi] : s.parts()) parts.push_back({{"weight", w}, {"xi", to_json(xi)}});
            return {{"kind", "mixture"}, {"parts", parts}};
        }
    }
    return {};
}

State state_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point") return State::point(j.at("index").get<int>());
    if (kind == "vector") return State::vector(vec_from_json(j.at("xi")));
    if (kind == "mixture") {
        std::vector<std::pair<double, Vec>> parts;
        for (const auto& p : j.at("parts")) parts.emplace_back(p.at("weight").get<double>(), vec_from_json(p.at("xi")));
        return State::mixture(parts);
    }
    throw std::invalid_argument("state: unknown kind " + kind);
}

json to_json(const FinitePoset& P) {
    json pairs = json::array();
    for (const auto& [i, j] : P.pairs()) pairs.push_back({i, j});
    return {{"size", P.size()}, {"pairs", pairs}};
}

FinitePoset poset_from_json(const json& j) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : j.at("pairs")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return FinitePoset(j.at("size").get<int>(), pairs, true);
}

json boolean_table_json(int m, int k, const std::vector<uint32_t>& values, const std::vector<Decoration>& claimed) {
    json decs = json::array();
    for (Decoration d : claimed) decs.push_back(decoration_name(d));
    return {{"kind", "pmap-table"},
            {"lattice", "boolean-" + std::to_string(m)},
            {"codomain", k},
            {"values", values},
            {"decorations", decs}};
}

PMapTable pmap_from_json(const json& j) {
    const std::string lattice = j.at("lattice").get<std::string>();
    if (lattice.rfind("boolean-", 0) != 0) throw std::invalid_argument("pmap table: only boolean-m lattices are supported");
    const int m = std::stoi(lattice.substr(8));
    const int k = j.at("codomain").get<int>();
    if (m < 1 || m > 12 || k < 1 || k > 20) throw std::invalid_argument("pmap table: sizes out of range");
    PMapTable t = PMapTable::boolean(m, k, j.at("values").get<std::vector<uint32_t>>());
    if (j.contains("decorations"))
        for (const auto& d : j.at("decorations")) t.claimed.insert(parse_decoration(d.get<std::string>()));
    t.validate();
    return t;
}

json matrix_json(const Mat& m) { return {{"dim", m.rows()}, {"entries", entries_of(m)}}; }

json witness_json(const ObstructionWitness& w) {
    json chain = json::array();
    for (size_t i = 0; i < w.checks.size(); ++i) {
        const ForcingCheck& c = w.checks[i];
        chain.push_back({{"psi", to_json(w.basis[i])},
                         {"in_gamma", c.in_gamma},
                         {"forced", c.forced},
                         {"u1", matrix_json(c.u1)},
                         {"u2", matrix_json(c.u2)},
                         {"d1", matrix_json(c.d1)},
                         {"d2", matrix_json(c.d2)},
                         {"v1", matrix_json(c.v1)},
                         {"v2", matrix_json(c.v2)},
                         {"dominance_margin", c.dominance_margin}});
    }
    return {{"kind", "obstruction-witness"},
            {"k", w.k},
            {"seed", w.seed},
            {"orthogonal", w.orthogonal},
            {"sums_to_one", w.sums_to_one},
            {"all_outside_gamma", w.all_outside_gamma},
            {"all_forced", w.all_forced},
            {"verified", w.verified()},
            {"forcing_chain", chain}};
}

}  // namespace oplat::io

#pragma once

#include "oplat/algebra.hpp"
#include "oplat/lattice.hpp"
#include "oplat/pmap.hpp"
#include "oplat/poset.hpp"

#include <json.hpp>

namespace oplat::io {

using json = nlohmann::json;

// Algebra: {"kind": "matrix"|"commutative", "dim": n, "tol": t}
json to_json(const Algebra& a);
Algebra algebra_from_json(const json& j);

// Element: {"spectrum": m, "values": [...]} or {"dim": n, "entries": [[re, im], ...]} row-major
json to_json(const Element& x);
Element element_from_json(const Algebra& alg, const json& j);

json to_json(const Projection& p);
Projection projection_from_json(const Algebra& alg, const json& j);

// {"algebra": ..., "polarity": "basic"|"antibasic", "generators": [...]}
json to_json(const BasicElement& b);
BasicElement basic_from_json(const json& j);

// {"kind": "point", "index": i} | {"kind": "vector", "xi": [[re, im], ...]} |
// {"kind": "mixture", "parts": [{"weight": w, "xi": ...}, ...]}
json to_json(const State& s);
State state_from_json(const json& j);

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

// {"size": n, "pairs": [[i, j], ...]} meaning i <= j
json to_json(const FinitePoset& P);
FinitePoset poset_from_json(const json& j);

// Boolean tables: {"kind": "pmap-table", "lattice": "boolean-m", "codomain": k,
// "values": [mask per domain mask], "decorations": [...]}
json boolean_table_json(int m, int k, const std::vector<uint32_t>& values, const std::vector<Decoration>& claimed);
PMapTable pmap_from_json(const json& j);

// Bare matrix in the element encoding; witnesses carry every matrix and the forcing chain.
json matrix_json(const Mat& m);
json witness_json(const ObstructionWitness& w);

}  // namespace oplat::io

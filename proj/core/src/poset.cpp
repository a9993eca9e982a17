#include "oplat/poset.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oplat {

FinitePoset::FinitePoset(int n, const std::vector<std::pair<int, int>>& pairs, bool close) : n_(n) {
    if (n < 1) throw std::invalid_argument("poset size must be >= 1");
    le_.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le_[i][i] = true;
    for (auto [i, j] : pairs) {
        if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("poset pair out of range");
        le_[i][j] = true;
    }
    if (close) {
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                if (le_[i][k])
                    for (int j = 0; j < n; ++j)
                        if (le_[k][j]) le_[i][j] = true;
    }
    validate();
}

FinitePoset FinitePoset::chain(int n) {
    std::vector<std::pair<int, int>> p;
    for (int i = 0; i + 1 < n; ++i) p.emplace_back(i, i + 1);
    return FinitePoset(n, p, true);
}

FinitePoset FinitePoset::antichain(int n) { return FinitePoset(n, {}); }

FinitePoset FinitePoset::from_table(std::vector<std::vector<bool>> le) {
    FinitePoset p;
    p.n_ = static_cast<int>(le.size());
    if (p.n_ < 1) throw std::invalid_argument("poset size must be >= 1");
    p.le_ = std::move(le);
    p.validate();
    return p;
}

void FinitePoset::validate() const {
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(le_[i].size()) != n_) throw std::invalid_argument("poset table is not square");
        if (!le_[i][i]) throw std::invalid_argument("relation is not reflexive");
    }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (i != j && le_[i][j] && le_[j][i]) throw std::invalid_argument("relation is not antisymmetric");
            if (!le_[i][j]) continue;
            for (int k = 0; k < n_; ++k)
                if (le_[j][k] && !le_[i][k]) throw std::invalid_argument("relation is not transitive");
        }
}

std::vector<std::pair<int, int>> FinitePoset::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && le_[i][j]) out.emplace_back(i, j);
    return out;
}

Bits FinitePoset::up(int s) const {
    Bits b(n_);
    for (int j = 0; j < n_; ++j)
        if (le_[s][j]) b.set(j);
    return b;
}

Bits FinitePoset::down(int s) const {
    Bits b(n_);
    for (int j = 0; j < n_; ++j)
        if (le_[j][s]) b.set(j);
    return b;
}

FinitePoset FinitePoset::induced(const std::vector<int>& elems) const {
    const int m = static_cast<int>(elems.size());
    std::vector<std::vector<bool>> t(m, std::vector<bool>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[a][b] = le_[elems[a]][elems[b]];
    return from_table(std::move(t));
}

bool FinitePoset::is_complete_lattice() const {
    // finite: complete iff every pair has a join and there is a bottom
    auto has_bottom = [&] {
        for (int i = 0; i < n_; ++i) {
            bool all = true;
            for (int j = 0; j < n_ && all; ++j) all = le_[i][j];
            if (all) return true;
        }
        return false;
    };
    if (!has_bottom()) return false;
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            int lub = -1;
            for (int c = 0; c < n_; ++c) {
                if (!(le_[a][c] && le_[b][c])) continue;
                bool least = true;
                for (int d = 0; d < n_ && least; ++d)
                    if (le_[a][d] && le_[b][d] && !le_[c][d]) least = false;
                if (least) { lub = c; break; }
            }
            if (lub < 0) return false;
        }
    return true;
}

Bits lower_complement(const FinitePoset& S, const Bits& C) {
    Bits out = S.all();
    for (size_t c = C.find_first(); c != Bits::npos; c = C.find_next(c)) out &= S.down(static_cast<int>(c));
    return out;
}

Bits upper_complement(const FinitePoset& S, const Bits& C) {
    Bits out = S.all();
    for (size_t c = C.find_first(); c != Bits::npos; c = C.find_next(c)) out &= S.up(static_cast<int>(c));
    return out;
}

int CompletionLattice::index_of(const Bits& upper) const {
    for (int i = 0; i < size(); ++i)
        if (cuts[i].upper == upper) return i;
    return -1;
}

FinitePoset CompletionLattice::as_poset() const { return FinitePoset::from_table(leq); }

namespace {

// larger upper sets are smaller elements: order by count descending, then bits
bool cut_before(const Bits& a, const Bits& b) {
    if (a.count() != b.count()) return a.count() > b.count();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i];
    return false;
}

}  // namespace

CompletionLattice build_completion(const FinitePoset& S, int bound) {
    if (S.size() > bound) throw std::invalid_argument("poset size exceeds completion bound");
    const int n = S.size();

    std::vector<Bits> closed{S.all()};
    for (int s = 0; s < n; ++s) {
        Bits u = S.up(s);
        std::vector<Bits> fresh;
        for (const Bits& x : closed) {
            Bits y = x & u;
            if (std::find(closed.begin(), closed.end(), y) == closed.end() &&
                std::find(fresh.begin(), fresh.end(), y) == fresh.end())
                fresh.push_back(y);
        }
        closed.insert(closed.end(), fresh.begin(), fresh.end());
    }
    std::sort(closed.begin(), closed.end(), cut_before);

    CompletionLattice L;
    const int m = static_cast<int>(closed.size());
    L.cuts.reserve(m);
    for (const Bits& u : closed) L.cuts.push_back({u, lower_complement(S, u)});

    std::map<Bits, int> where;
    for (int i = 0; i < m; ++i) where[L.cuts[i].upper] = i;

    L.leq.assign(m, std::vector<bool>(m));
    L.meet.assign(m, std::vector<int>(m));
    L.join.assign(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            L.leq[i][j] = L.cuts[j].upper.is_subset_of(L.cuts[i].upper);
            L.join[i][j] = where.at(L.cuts[i].upper & L.cuts[j].upper);
            L.meet[i][j] = where.at(upper_complement(S, L.cuts[i].lower & L.cuts[j].lower));
        }
    L.embedding.resize(n);
    for (int s = 0; s < n; ++s) L.embedding[s] = where.at(S.up(s));
    L.bottom = 0;
    L.top = m - 1;
    return L;
}

std::vector<Bits> cuts_by_subset_closure(const FinitePoset& S) {
    const int n = S.size();
    if (n > 20) throw std::invalid_argument("subset closure oracle limited to 20 points");
    std::set<Bits> seen;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        Bits c(n, mask);
        seen.insert(upper_complement(S, lower_complement(S, c)));
    }
    std::vector<Bits> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), cut_before);
    return out;
}

AxiomReport check_lattice_axioms(const CompletionLattice& L) {
    const int m = L.size();
    auto fail = [](std::string why) { return AxiomReport{false, std::move(why)}; };
    for (int i = 0; i < m; ++i) {
        if (!L.leq[L.bottom][i]) return fail("bottom not below every cut");
        if (!L.leq[i][L.top]) return fail("top not above every cut");
    }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int j = L.join[a][b], w = L.meet[a][b];
            if (!L.leq[a][j] || !L.leq[b][j]) return fail("join is not an upper bound");
            if (!L.leq[w][a] || !L.leq[w][b]) return fail("meet is not a lower bound");
            if (j != L.join[b][a] || w != L.meet[b][a]) return fail("commutativity");
            if (L.meet[a][L.join[a][b]] != a || L.join[a][L.meet[a][b]] != a) return fail("absorption");
            for (int c = 0; c < m; ++c) {
                if (L.leq[a][c] && L.leq[b][c] && !L.leq[j][c]) return fail("join is not least");
                if (L.leq[c][a] && L.leq[c][b] && !L.leq[c][w]) return fail("meet is not greatest");
                if (L.join[L.join[a][b]][c] != L.join[a][L.join[b][c]]) return fail("join associativity");
                if (L.meet[L.meet[a][b]][c] != L.meet[a][L.meet[b][c]]) return fail("meet associativity");
            }
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && L.leq[i][j] && L.leq[j][i]) return fail("order not antisymmetric");
    return {};
}

bool completion_is_identity(const FinitePoset& P) {
    CompletionLattice L = build_completion(P, std::max(kCompletionBound, P.size()));
    if (L.size() != P.size()) return false;
    std::vector<bool> hit(L.size(), false);
    for (int s = 0; s < P.size(); ++s) hit[L.embedding[s]] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
    for (int a = 0; a < P.size(); ++a)
        for (int b = 0; b < P.size(); ++b)
            if (P.leq(a, b) != L.leq[L.embedding[a]][L.embedding[b]]) return false;
    return true;
}

namespace {

uint64_t code_under(const std::vector<std::vector<bool>>& le, const std::vector<int>& perm) {
    const int n = static_cast<int>(le.size());
    uint64_t c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (le[perm[i]][perm[j]]) c |= uint64_t{1} << (i * n + j);
    return c;
}

uint64_t canonical_code(const std::vector<std::vector<bool>>& le) {
    const int n = static_cast<int>(le.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t best = ~uint64_t{0};
    do {
        best = std::min(best, code_under(le, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

bool isomorphic(const FinitePoset& a, const FinitePoset& b) {
    if (a.size() != b.size()) return false;
    if (a.size() > 8) throw std::invalid_argument("isomorphism test limited to 8 points");
    if (a.pairs().size() != b.pairs().size()) return false;
    return canonical_code(a.table()) == canonical_code(b.table());
}

std::vector<FinitePoset> enumerate_posets(int n) {
    if (n < 1 || n > 7) throw std::invalid_argument("enumerate_posets supports 1..7 points");
    // every finite poset has a natural labelling (a linear extension), so
    // upper-triangular relations cover all isomorphism classes
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    const int k = static_cast<int>(slots.size());

    std::set<uint64_t> seen;
    std::vector<FinitePoset> out;
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) le[i][j] = (i == j);
        for (int s = 0; s < k; ++s)
            if (mask >> s & 1) le[slots[s].first][slots[s].second] = true;
        bool transitive = true;
        for (int i = 0; i < n && transitive; ++i)
            for (int j = i + 1; j < n && transitive; ++j) {
                if (!le[i][j]) continue;
                for (int l = j + 1; l < n; ++l)
                    if (le[j][l] && !le[i][l]) { transitive = false; break; }
            }
        if (!transitive) continue;
        if (seen.insert(canonical_code(le)).second) out.push_back(FinitePoset::from_table(le));
    }
    return out;
}

bool is_monotone_into(const FinitePoset& S, const std::vector<int>& values, const CompletionLattice& L) {
    for (int a = 0; a < S.size(); ++a)
        for (int b = 0; b < S.size(); ++b)
            if (S.leq(a, b) && !L.leq[values[a]][values[b]]) return false;
    return true;
}

ExtensionResult extend_monotone(const FinitePoset& S, const std::vector<int>& T, const std::vector<int>& f,
                                const CompletionLattice& L, const std::vector<double>& r_plus,
                                const std::vector<double>& r_minus) {
    const int n = S.size();
    if (T.size() != f.size()) throw std::invalid_argument("extend_monotone: |T| != |f|");
    for (size_t a = 0; a < T.size(); ++a) {
        if (T[a] < 0 || T[a] >= n) throw std::invalid_argument("extend_monotone: T not inside S");
        if (f[a] < 0 || f[a] >= L.size()) throw std::invalid_argument("extend_monotone: value outside lattice");
    }
    for (size_t a = 0; a < T.size(); ++a)
        for (size_t b = 0; b < T.size(); ++b)
            if (S.leq(T[a], T[b]) && !L.leq[f[a]][f[b]]) throw std::invalid_argument("f is not monotone");
    for (const auto* r : {&r_plus, &r_minus}) {
        if (r->empty()) continue;
        if (static_cast<int>(r->size()) != n) throw std::invalid_argument("comparability witness size mismatch");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (S.leq(a, b) && (*r)[a] > (*r)[b]) throw std::invalid_argument("comparability witness not monotone");
    }

    ExtensionResult res;
    res.values.resize(n);
    for (int s = 0; s < n; ++s) {
        int lo = L.bottom, hi = L.top;
        for (size_t a = 0; a < T.size(); ++a) {
            if (S.leq(T[a], s)) lo = L.join[lo][f[a]];
            if (S.leq(s, T[a])) hi = L.meet[hi][f[a]];
        }
        // the sup of the dominated images; the clamp only matters if f was not monotone
        res.values[s] = L.meet[lo][hi];
    }
    return res;
}

}  // namespace oplat

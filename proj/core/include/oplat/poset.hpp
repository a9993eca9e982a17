#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oplat {

using Bits = boost::dynamic_bitset<>;

class FinitePoset {
public:
    FinitePoset() = default;
    // pairs (i, j) mean i <= j; validated as a partial order unless close=true,
    // in which case the reflexive-transitive closure is taken first.
    FinitePoset(int n, const std::vector<std::pair<int, int>>& pairs, bool close = false);
    static FinitePoset chain(int n);
    static FinitePoset antichain(int n);
    static FinitePoset from_table(std::vector<std::vector<bool>> le);

    int size() const { return n_; }
    bool leq(int i, int j) const { return le_[i][j]; }
    const std::vector<std::vector<bool>>& table() const { return le_; }
    std::vector<std::pair<int, int>> pairs() const;  // strict pairs i < j

    Bits up(int s) const;    // principal filter
    Bits down(int s) const;  // principal ideal
    Bits all() const { return Bits(n_).set(); }

    FinitePoset induced(const std::vector<int>& elems) const;
    bool is_complete_lattice() const;

private:
    void validate() const;

    int n_ = 0;
    std::vector<std::vector<bool>> le_;
};

Bits lower_complement(const FinitePoset& S, const Bits& C);
Bits upper_complement(const FinitePoset& S, const Bits& C);

struct Cut {
    Bits upper;  // the complemented subset
    Bits lower;  // its lower complement
};

// The completion: cuts ordered by reverse inclusion of upper sets, so that
// join is intersection and meet is (C_c ∩ D_c)^c.
struct CompletionLattice {
    std::vector<Cut> cuts;
    std::vector<std::vector<bool>> leq;
    std::vector<std::vector<int>> meet;
    std::vector<std::vector<int>> join;
    std::vector<int> embedding;  // s -> index of cut ↑s
    int bottom = 0;
    int top = 0;

    int size() const { return static_cast<int>(cuts.size()); }
    int index_of(const Bits& upper) const;
    FinitePoset as_poset() const;
};

// Default bound on the input size accepted by build_completion.
inline constexpr int kCompletionBound = 16;

CompletionLattice build_completion(const FinitePoset& S, int bound = kCompletionBound);

// Oracle: every subset closed under double complementation, deduplicated.
std::vector<Bits> cuts_by_subset_closure(const FinitePoset& S);

struct AxiomReport {
    bool ok = true;
    std::string failure;
};
AxiomReport check_lattice_axioms(const CompletionLattice& L);

// The embedding s -> ↑s is an order isomorphism onto L's elements when L's poset
// is already complete; returns true iff build_completion(P) is isomorphic to P
// through its own embedding.
bool completion_is_identity(const FinitePoset& P);

bool isomorphic(const FinitePoset& a, const FinitePoset& b);

// All partial orders on n points up to isomorphism (n <= 6 practical).
std::vector<FinitePoset> enumerate_posets(int n);
template <class Rng>
FinitePoset random_poset(Rng& rng, int n, double density);

// Monotone extension of f: T -> L along T ⊆ S. f maps positions in T to cut
// indices. r_plus / r_minus are comparability witnesses, checked monotone.
struct ExtensionResult {
    std::vector<int> values;  // cut index per element of S
};
ExtensionResult extend_monotone(const FinitePoset& S, const std::vector<int>& T, const std::vector<int>& f,
                                const CompletionLattice& L, const std::vector<double>& r_plus,
                                const std::vector<double>& r_minus);

bool is_monotone_into(const FinitePoset& S, const std::vector<int>& values, const CompletionLattice& L);

// ---- template ----

template <class Rng>
FinitePoset random_poset(Rng& rng, int n, double density) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) pairs.emplace_back(i, j);
    return FinitePoset(n, pairs, true);
}

}  // namespace oplat

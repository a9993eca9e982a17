#pragma once

#include "oplat/algebra.hpp"
#include "oplat/lattice.hpp"

#include <vector>

namespace oplat {

// Seeded instance generators shared by the suites, the CLI and the tests.

// dyadic tuple: entries k/8 in [lo, hi]
RVec dyadic_tuple(Rng& rng, int m, double lo, double hi);
BasicElement random_dyadic_basic(Rng& rng, const Algebra& alg, int gens, double lo = -2, double hi = 2);
LatticeElement random_dyadic_lattice(Rng& rng, const Algebra& alg, int gens);

Element random_psd(Rng& rng, const Algebra& alg, double scale = 1.0);  // 0 <= x, ‖x‖ <= scale
// spectrum on the k/8 grid in [0, 1], random eigenbasis
Element random_psd_grid(Rng& rng, const Algebra& alg);
BasicElement random_psd_basic(Rng& rng, const Algebra& alg, int gens);
Element random_selfadjoint(Rng& rng, const Algebra& alg);

State random_pure_state(Rng& rng, const Algebra& alg);  // point state in the commutative kind
Projection random_projection(Rng& rng, const Algebra& alg);  // uniform rank in [0, n]

}  // namespace oplat

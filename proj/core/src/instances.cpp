#include "oplat/instances.hpp"

#include <cmath>

namespace oplat {

RVec dyadic_tuple(Rng& rng, int m, double lo, double hi) {
    const int a = static_cast<int>(std::ceil(lo * 8)), b = static_cast<int>(std::floor(hi * 8));
    RVec v(m);
    for (int i = 0; i < m; ++i) v(i) = uniform_int(rng, a, b) / 8.0;
    return v;
}

BasicElement random_dyadic_basic(Rng& rng, const Algebra& alg, int gens, double lo, double hi) {
    std::vector<Element> g;
    for (int i = 0; i < gens; ++i) g.emplace_back(alg, dyadic_tuple(rng, alg.dim, lo, hi));
    return BasicElement::basic(g);
}

LatticeElement random_dyadic_lattice(Rng& rng, const Algebra& alg, int gens) {
    return {random_dyadic_basic(rng, alg, uniform_int(rng, 1, gens)),
            random_dyadic_basic(rng, alg, uniform_int(rng, 1, gens))};
}

Element random_psd(Rng& rng, const Algebra& alg, double scale) {
    if (alg.kind == Kind::commutative) return Element(alg, random_tuple(rng, alg.dim, 0.0, scale));
    Mat g = random_hermitian(rng, alg.dim);
    Mat s = g * g;
    s = 0.5 * (s + s.adjoint());
    const double top = Eigen::SelfAdjointEigenSolver<Mat>(s, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    return Element(alg, Mat(scale * s / std::max(1.0, top)));
}

Element random_psd_grid(Rng& rng, const Algebra& alg) {
    RVec spec = dyadic_tuple(rng, alg.dim, 0.0, 1.0);
    if (alg.kind == Kind::commutative) return Element(alg, spec);
    Mat u = random_unitary(rng, alg.dim);
    Mat x = u * spec.cast<cplx>().asDiagonal() * u.adjoint();
    return Element(alg, Mat(0.5 * (x + x.adjoint())));
}

BasicElement random_psd_basic(Rng& rng, const Algebra& alg, int gens) {
    std::vector<Element> g;
    for (int i = 0; i < gens; ++i) g.push_back(random_psd(rng, alg));
    return BasicElement::basic(g);
}

Element random_selfadjoint(Rng& rng, const Algebra& alg) {
    if (alg.kind == Kind::commutative) return Element(alg, random_tuple(rng, alg.dim, -1.0, 1.0));
    return Element(alg, random_hermitian(rng, alg.dim));
}

State random_pure_state(Rng& rng, const Algebra& alg) {
    if (alg.kind == Kind::commutative) return State::point(uniform_int(rng, 0, alg.dim - 1));
    return State::vector(random_unit_vector(rng, alg.dim));
}

Projection random_projection(Rng& rng, const Algebra& alg) {
    const int r = uniform_int(rng, 0, alg.dim);
    if (alg.kind == Kind::commutative) {
        RVec v = RVec::Zero(alg.dim);
        for (int i = 0; i < alg.dim; ++i) v(i) = uniform(rng, 0, 1) < 0.5 ? 1.0 : 0.0;
        return Projection(Element(alg, v));
    }
    return Projection(Element(alg, random_projection_matrix(rng, alg.dim, r)));
}

}  // namespace oplat

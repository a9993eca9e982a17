#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oplat {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

enum class Kind { commutative, matrix };

struct Algebra {
    Kind kind = Kind::matrix;
    int dim = 1;  // spectrum size or matrix dimension
    double tol = 1e-10;

    static Algebra commutative(int m, double tol = 1e-10);
    static Algebra matrix(int n, double tol = 1e-10);

    double merge_radius() const { return 100.0 * tol; }
    bool same(const Algebra& o) const { return kind == o.kind && dim == o.dim; }
};

void require_same(const Algebra& a, const Algebra& b);

// Self-adjoint element: real tuple (commutative) or Hermitian matrix.
class Element {
public:
    Element() = default;
    Element(const Algebra& alg, RVec values);
    Element(const Algebra& alg, Mat m);

    static Element zero(const Algebra& alg);
    static Element unit(const Algebra& alg);
    static Element scalar(const Algebra& alg, double a);

    const Algebra& algebra() const { return alg_; }
    Kind kind() const { return alg_.kind; }
    int dim() const { return alg_.dim; }
    double tol() const { return alg_.tol; }

    const RVec& values() const { return vals_; }
    const Mat& matrix() const { return mat_; }
    Mat dense() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(double a) const;
    Element& operator+=(const Element& o);

    // Jordan-compatible operations that stay self-adjoint.
    Element square() const;
    Element sandwich(const Element& p) const;  // p x p

    double norm() const;  // operator norm
    double min_eig() const;
    double max_eig() const;
    double trace() const;
    double max_abs_diff(const Element& o) const;

    bool leq(const Element& o) const;  // o - *this >= -tol

private:
    Algebra alg_{};
    RVec vals_;
    Mat mat_;
};

inline Element operator*(double a, const Element& x) { return x * a; }

struct Spectrum {
    RVec values;  // ascending
    Mat vectors;  // columns
};

Spectrum eig(const Element& x);
Element from_spectrum(const Algebra& alg, const RVec& values, const Mat& vectors);

enum class Func { sqrt, square };

bool is_positive(const Element& x);
Element func_calc(const Element& x, Func f);
Element positive_part(const Element& x);
Element negative_part(const Element& x);  // a_- >= 0 with x = a_+ - a_-

class Projection {
public:
    Projection() = default;
    explicit Projection(const Element& base);  // validates idempotence
    static Projection from_basis(const Algebra& alg, const Mat& basis);
    static Projection zero(const Algebra& alg);
    static Projection unit(const Algebra& alg);

    const Element& base() const { return base_; }
    int rank() const { return rank_; }
    const Mat& basis() const { return basis_; }
    const Algebra& algebra() const { return base_.algebra(); }

    Projection complement() const;
    bool leq(const Projection& q) const;
    bool equals(const Projection& q, double tol) const;
    bool commutes(const Projection& q, double tol) const;
    bool orthogonal(const Projection& q, double tol) const;

private:
    Element base_;
    int rank_ = 0;
    Mat basis_;
};

Projection support_projection(const Element& x);

struct SpectralProjections {
    Projection sub;   // p_{x,α}: eigenvalues in (0, α]
    Projection sup;   // p^α: eigenvalues >= α
    Projection band;  // p^{α,β}: eigenvalues in [α, β)
};
SpectralProjections spectral_projections(const Element& x, double alpha, double beta);

struct ChainTerm {
    double alpha;
    Projection p;
};
std::vector<ChainTerm> chain_decomposition(const Element& x);
Element reassemble(const Algebra& alg, const std::vector<ChainTerm>& chain);

class State {
public:
    enum class Type { point, vector, mixture };

    static State point(int index);
    static State vector(const Vec& xi);
    static State mixture(std::vector<std::pair<double, Vec>> parts);

    Type type() const { return type_; }
    int index() const { return index_; }
    const std::vector<std::pair<double, Vec>>& parts() const { return parts_; }
    bool is_pure() const;
    Vec vector_at(int dim) const;  // unit vector for pure states

    Mat density(int dim) const;
    double operator()(const Element& x) const;

private:
    Type type_ = Type::point;
    int index_ = 0;
    std::vector<std::pair<double, Vec>> parts_;
};

inline double state_eval(const State& rho, const Element& x) { return rho(x); }

// Separating element: c >= 0 in span with rho(c)=1, sigma(c) <= eps.
std::optional<Element> separate_states(const std::vector<Element>& span, const State& rho,
                                       const State& sigma, double eps);

// Randomness is seeded explicitly everywhere.
using Rng = std::mt19937_64;
Mat random_hermitian(Rng& rng, int n, double scale = 1.0);
Mat random_unitary(Rng& rng, int n);
Vec random_unit_vector(Rng& rng, int n);
Mat random_projection_matrix(Rng& rng, int n, int rank);
RVec random_tuple(Rng& rng, int m, double lo, double hi);
double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

}  // namespace oplat

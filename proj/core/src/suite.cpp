#include "oplat/suite.hpp"

#include "oplat/instances.hpp"
#include "oplat/io.hpp"
#include "oplat/jordan.hpp"
#include "oplat/lattice.hpp"
#include "oplat/pmap.hpp"
#include "oplat/poset.hpp"
#include "oplat/projlattice.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace oplat {

using nlohmann::json;

// ---- config, report ----

void SuiteConfig::validate() const {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    if (max_dim < 2 || max_dim > 8) throw std::invalid_argument("dims must be in [2, 8]");
    if (tol < 0 || tol > 1e-4) throw std::invalid_argument("tol must be in [0, 1e-4]");
}

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json SuiteReport::to_json(bool with_timestamp) const {
    json header = {{"tool", "oplat"}, {"version", "0.1.0"}, {"suite", suite}, {"seed", config.seed}};
    if (with_timestamp) header["timestamp"] = timestamp;
    json cfg = {{"tol", config.tol},
                {"count", config.count},
                {"dims", config.max_dim},
                {"format", config.format == ReportFormat::json ? "json" : "csv"}};
    json list = json::array();
    int failed = 0;
    for (const auto& c : checks) {
        list.push_back({{"suite", c.suite},
                        {"name", c.name},
                        {"passed", c.passed},
                        {"instances", c.instances},
                        {"metric", c.metric},
                        {"detail", c.detail}});
        if (!c.passed) ++failed;
    }
    return {{"header", header},
            {"config", cfg},
            {"checks", list},
            {"summary", {{"checks", checks.size()}, {"failed", failed}, {"passed", failed == 0}}}};
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string SuiteReport::render(ReportFormat f, bool with_timestamp) const {
    if (f == ReportFormat::json) return to_json(with_timestamp).dump(2) + "\n";
    std::ostringstream os;
    if (with_timestamp) os << "# timestamp=" << timestamp << "\n";
    os << "# suite=" << suite << " seed=" << config.seed << "\n";
    os << "suite,name,passed,instances,metric,detail\n";
    for (const auto& c : checks)
        os << c.suite << ',' << c.name << ',' << (c.passed ? "true" : "false") << ',' << c.instances << ','
           << num(c.metric) << ',' << csv_field(c.detail) << '\n';
    return os.str();
}

uint64_t stable_hash(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t derive_seed(uint64_t seed, const std::string& name) {
    uint64_t z = seed ^ stable_hash(name);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"lattice", "jordan", "projections", "pmap", "poset"};
    return names;
}

namespace {

struct Runner {
    std::string suite;
    const SuiteConfig& cfg;
    std::vector<CheckResult>& out;

    void operator()(const std::string& name, const std::function<void(Rng&, CheckResult&)>& body) {
        CheckResult r;
        r.suite = suite;
        r.name = suite + "." + name;
        Rng rng(derive_seed(cfg.seed, r.name));
        try {
            body(rng, r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(r);
    }
};

int dim_cap(const SuiteConfig& cfg, int cap) { return std::min(cfg.max_dim, cap); }

// ---- poset ----

void poset_suite(Runner& run) {
    run("enumeration.iso-class-counts", [](Rng&, CheckResult& r) {
        const std::vector<size_t> expected = {1, 1, 2, 5, 16, 63};
        r.passed = true;
        for (int n = 1; n <= 5; ++n) {
            size_t got = enumerate_posets(n).size();
            ++r.instances;
            if (got != expected[n]) {
                r.passed = false;
                r.detail = "n=" + std::to_string(n) + " got " + std::to_string(got);
            }
        }
    });
    run("completion.idempotence-exhaustive", [](Rng&, CheckResult& r) {
        r.passed = true;
        for (int n = 1; n <= 5; ++n)
            for (const auto& P : enumerate_posets(n)) {
                ++r.instances;
                CompletionLattice L = build_completion(P);
                if (!completion_is_identity(L.as_poset())) r.passed = false;
                if (completion_is_identity(P) != P.is_complete_lattice()) r.passed = false;
            }
        r.detail = r.passed ? "completion of every poset with at most 5 points is its own completion" : "failure";
    });
    run("completion.axioms-exhaustive", [](Rng&, CheckResult& r) {
        r.passed = true;
        for (int n = 1; n <= 5; ++n)
            for (const auto& P : enumerate_posets(n)) {
                ++r.instances;
                AxiomReport a = check_lattice_axioms(build_completion(P));
                if (!a.ok) {
                    r.passed = false;
                    r.detail = a.failure;
                }
            }
    });
    run("completion.cut-oracle-sampled", [&run](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < run.cfg.count; ++i) {
            const int n = uniform_int(rng, 6, 8);
            FinitePoset S = random_poset(rng, n, uniform(rng, 0.1, 0.6));
            CompletionLattice L = build_completion(S);
            ++r.instances;
            if (static_cast<size_t>(L.size()) != cuts_by_subset_closure(S).size()) r.passed = false;
            if (!check_lattice_axioms(L).ok) r.passed = false;
            if (!completion_is_identity(L.as_poset())) r.passed = false;
        }
    });
    run("extension.monotone-sampled", [&run](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < run.cfg.count; ++i) {
            const int n = uniform_int(rng, 2, 6);
            FinitePoset S = random_poset(rng, n, uniform(rng, 0.2, 0.7));
            CompletionLattice L = build_completion(S);
            std::vector<int> T, f;
            for (int s = 0; s < n; ++s)
                if (uniform(rng, 0, 1) < 0.5) {
                    T.push_back(s);
                    f.push_back(L.embedding[s]);
                }
            ExtensionResult e = extend_monotone(S, T, f, L, {}, {});
            ++r.instances;
            if (!is_monotone_into(S, e.values, L)) r.passed = false;
            for (size_t a = 0; a < T.size(); ++a)
                if (e.values[T[a]] != f[a]) r.passed = false;
        }
    });
}

// ---- lattice ----

void lattice_suite(Runner& run) {
    const int count = run.cfg.count;
    auto alg_for = [&](Rng& rng) { return Algebra::commutative(uniform_int(rng, 2, std::max(3, run.cfg.max_dim)), run.cfg.tol); };

    run("pi.linearity", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = alg_for(rng);
            LatticeElement A = random_dyadic_lattice(rng, alg, 3), B = random_dyadic_lattice(rng, alg, 3);
            double a = uniform_int(rng, 0, 16) / 8.0;
            ++r.instances;
            if (pi(add(A, B)).values != (pi(A).values + pi(B).values)) r.passed = false;
            if (pi(scale(A, a)).values != RVec(a * pi(A).values)) r.passed = false;
        }
    });
    run("pi.monotone", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = alg_for(rng);
            LatticeElement A = random_dyadic_lattice(rng, alg, 3), B = random_dyadic_lattice(rng, alg, 3);
            LatticeElement J = vee(A, B);
            ++r.instances;
            if (!less_equal(A, J).holds) r.passed = false;
            if (((pi(J).values - pi(A).values).array() < 0).any()) r.passed = false;
        }
    });
    run("pi.lattice-operations", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = alg_for(rng);
            LatticeElement A = random_dyadic_lattice(rng, alg, 3), B = random_dyadic_lattice(rng, alg, 3);
            ++r.instances;
            r.metric = std::max(r.metric, (pi(wedge(A, B)).values - pi(A).values.cwiseMin(pi(B).values)).cwiseAbs().maxCoeff());
            r.metric = std::max(r.metric, (pi(vee(A, B)).values - pi(A).values.cwiseMax(pi(B).values)).cwiseAbs().maxCoeff());
        }
        r.passed = r.metric == 0.0;
    });
    run("decomposition.positive-parts", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = alg_for(rng);
            LatticeElement A = random_dyadic_lattice(rng, alg, 3);
            PositiveDecomposition d = min_positive_decomposition(A);
            RVec p = pi(d.plus).values, m = pi(d.minus).values;
            ++r.instances;
            if ((p - m) != pi(A).values) r.passed = false;
            if ((p.array() < 0).any() || (m.array() < 0).any()) r.passed = false;
            if (p.cwiseProduct(m).cwiseAbs().maxCoeff() != 0) r.passed = false;
        }
    });
    run("equivalence.prune", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = alg_for(rng);
            BasicElement C = random_dyadic_basic(rng, alg, 4);
            ++r.instances;
            if (!equivalent(C, prune(C)).holds) r.passed = false;
        }
    });
    run("norm.commutative", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = alg_for(rng);
            LatticeElement A = random_dyadic_lattice(rng, alg, 3);
            Interval n = norm(A);
            ++r.instances;
            if (n.lower != n.upper || n.lower != pi(A).values.cwiseAbs().maxCoeff()) r.passed = false;
        }
    });
    run("norm.matrix-bracket", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = Algebra::matrix(uniform_int(rng, 2, dim_cap(run.cfg, 4)), run.cfg.tol);
            LatticeElement A{random_psd_basic(rng, alg, 2), random_psd_basic(rng, alg, 2)};
            Interval n = norm(A);
            ++r.instances;
            if (n.lower > n.upper + 1e-9) r.passed = false;
            r.metric = std::max(r.metric, n.width());
        }
    });
}

// ---- jordan ----

void jordan_suite(Runner& run) {
    const int count = run.cfg.count;
    const double eps = kWitnessEps;
    run("square-interval.width", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = Algebra::matrix(uniform_int(rng, 2, dim_cap(run.cfg, 6)), run.cfg.tol);
            BasicElement C = random_psd_basic(rng, alg, uniform_int(rng, 1, 3));
            State rho = random_pure_state(rng, alg);
            CertifiedInterval ci = eval_square_interval(C, rho, eps);
            const double s = s_rep(C, rho);
            const double bound = 4 * eps * (std::max(norm(C).lower, s) + eps);
            ++r.instances;
            if (ci.lower != s * s || ci.width() > bound || ci.width() < 0) r.passed = false;
            r.metric = std::max(r.metric, ci.width() / bound);
        }
        r.detail = "max width / bound = " + num(r.metric);
    });
    run("sqr-single.gap", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            const bool mat = i % 2 == 1;
            const int n = uniform_int(rng, 2, dim_cap(run.cfg, 6));
            Algebra alg = mat ? Algebra::matrix(n, run.cfg.tol) : Algebra::commutative(n, run.cfg.tol);
            Element a = random_selfadjoint(rng, alg);
            SqrSingle q = sqr_single(a, 1e6);
            const double allowance = 1e-14 * a.norm() * a.norm() + 1e-9 * q.gap_bound;
            ++r.instances;
            if (q.gap > q.gap_bound + allowance) r.passed = false;
        }
    });
    run("sign-split.vanishing-side", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = Algebra::matrix(4, run.cfg.tol);
            Element a = random_selfadjoint(rng, alg);
            Lemma2Report rep = lemma2_state_check(a, random_pure_state(rng, alg));
            ++r.instances;
            if (!rep.ok || rep.rho_c2 > 1e-8) r.passed = false;
            r.metric = std::max(r.metric, rep.rho_c2);
        }
    });
    run("large-shift.gap-decay", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        std::vector<double> grid;
        for (int k = 0; k <= 32; ++k) grid.push_back(std::pow(10.0, k / 8.0));
        bool exhibited = false;
        for (int i = 0; i < count; ++i) {
            Algebra alg = Algebra::matrix(uniform_int(rng, 2, dim_cap(run.cfg, 4)), run.cfg.tol);
            BasicElement C = random_psd_basic(rng, alg, uniform_int(rng, 1, 3));
            State rho = random_pure_state(rng, alg);
            for (Growth f : {Growth::constant, Growth::sqrt}) {
                auto trace = lemma5_asymptotics(C, f, grid, rho);
                if (!gap_trace_decreasing(trace, 1e2) || trace.back().gap > 1e-3) r.passed = false;
                r.metric = std::max(r.metric, trace.back().gap);
            }
            auto id = lemma5_asymptotics(C, Growth::identity, grid, rho);
            if (id.back().gap > 1e-3) exhibited = true;
            ++r.instances;
        }
        if (!exhibited) r.passed = false;
        r.detail = exhibited ? "identity growth keeps a non-vanishing gap" : "no non-vanishing identity-growth gap";
    });
    run("clouds.commutative-zero", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = Algebra::commutative(uniform_int(rng, 2, 4), run.cfg.tol);
            BasicElement C = random_dyadic_basic(rng, alg, 2, 0, 2), D = random_dyadic_basic(rng, alg, 2, 0, 2),
                         E = random_dyadic_basic(rng, alg, 2, 0, 2);
            State rho = random_pure_state(rng, alg);
            for (CloudType t : {CloudType::first, CloudType::second}) {
                Interval v = quadratic_cloud_at(C, D, E, rho, t);
                if (v.lower != 0.0 || v.upper != 0.0) r.passed = false;
                r.metric = std::max({r.metric, std::abs(v.lower), std::abs(v.upper)});
            }
            ++r.instances;
        }
    });
    run("square-root.commutative", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = Algebra::commutative(uniform_int(rng, 2, 4), run.cfg.tol);
            LatticeElement A = random_dyadic_lattice(rng, alg, 3);
            LatticeElement P{random_dyadic_basic(rng, alg, 2, 1, 3), random_dyadic_basic(rng, alg, 2, 0, 1)};
            RVec pa = pi(A).values, pp = pi(P).values;
            for (int t = 0; t < alg.dim; ++t) {
                State pt = State::point(t);
                double sq = square_general_at(A, pt);
                r.metric = std::max(r.metric, std::abs(sq - pa(t) * pa(t)));
                Interval rt = sqrt_general_at(P, pt);
                if (rt.lower > std::sqrt(std::max(0.0, pp(t))) + 1e-8) r.passed = false;
            }
            ++r.instances;
        }
        if (r.metric > 1e-8) r.passed = false;
    });
    run("schwarz.map-families", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            const int n = uniform_int(rng, 2, dim_cap(run.cfg, 4));
            Algebra com = Algebra::commutative(n, run.cfg.tol), mat = Algebra::matrix(n, run.cfg.tol);
            std::vector<std::pair<PositiveMap, Algebra>> maps;
            maps.emplace_back(PositiveMap::identity(com), com);
            maps.emplace_back(PositiveMap::restriction(com, {0, n - 1}), com);
            maps.emplace_back(PositiveMap::state(mat, random_pure_state(rng, mat)), mat);
            for (auto& [phi, alg] : maps) {
                phi.verify_positive(rng());
                SchwarzReport s = schwarz22_check(phi, random_selfadjoint(rng, alg), random_selfadjoint(rng, alg));
                if (!s.holds) r.passed = false;
                ++r.instances;
            }
        }
    });
}

// ---- projections ----

void projection_suite(Runner& run) {
    const int count = run.cfg.count;
    const int top = dim_cap(run.cfg, 8);
    run("wedge.oracle", [&](Rng& rng, CheckResult& r) {
        for (int n = 2; n <= top; ++n) {
            Algebra alg = Algebra::matrix(n, run.cfg.tol);
            for (int i = 0; i < count; ++i) {
                Projection p = random_projection(rng, alg), q = random_projection(rng, alg);
                IterativeWedge w = wedge_iterative(p, q);
                double err = w.value.base().max_abs_diff(wedge_exact(p, q).base());
                r.metric = std::max(r.metric, err);
                ++r.instances;
            }
        }
        r.passed = r.metric <= 1e-8;
        r.detail = "max |iterative - exact| = " + num(r.metric);
    });
    run("vee.de-morgan", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = Algebra::matrix(uniform_int(rng, 2, top), run.cfg.tol);
            Projection p = random_projection(rng, alg), q = random_projection(rng, alg);
            Projection v = vee(p, q);
            Projection dual = wedge_iterative(p.complement(), q.complement()).value.complement();
            ++r.instances;
            if (!p.leq(v) || !q.leq(v)) r.passed = false;
            r.metric = std::max(r.metric, v.base().max_abs_diff(dual.base()));
        }
        if (r.metric > 1e-8) r.passed = false;
    });
    run("wedge.maximal-lower-bound", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            const int n = uniform_int(rng, 3, std::max(3, top));
            Algebra alg = Algebra::matrix(n, run.cfg.tol);
            Mat U = random_unitary(rng, n);
            const int rz = uniform_int(rng, 0, n - 2);
            Projection z = Projection::from_basis(alg, U.leftCols(rz));
            // p, q each add one random direction orthogonal to z
            Mat rest = U.rightCols(n - rz);
            Vec a = rest * random_unit_vector(rng, n - rz), b = rest * random_unit_vector(rng, n - rz);
            Mat pb(n, rz + 1), qb(n, rz + 1);
            pb << U.leftCols(rz), a;
            qb << U.leftCols(rz), b;
            Projection p = Projection::from_basis(alg, pb), q = Projection::from_basis(alg, qb);
            ++r.instances;
            if (!z.leq(wedge_exact(p, q))) r.passed = false;
        }
    });
    run("commuting-bounds.sandwich", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            Algebra alg = Algebra::matrix(uniform_int(rng, 2, top), run.cfg.tol);
            Projection e = random_projection(rng, alg), f = random_projection(rng, alg);
            CommutingBounds b = commuting_bounds(e, f);
            ++r.instances;
            if (!b.lower.leq(e) || !e.leq(b.upper)) r.passed = false;
            if (!predicates(b.lower, f).commuting || !predicates(b.upper, f).commuting) r.passed = false;
            bool eq = b.lower.equals(e, 1e-8) && b.upper.equals(e, 1e-8);
            if (eq != predicates(e, f).commuting) r.passed = false;
        }
    });
    run("commuting-bounds.multiplet", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            const int n = uniform_int(rng, 2, top);
            Algebra alg = Algebra::matrix(n, run.cfg.tol);
            std::vector<Projection> F;
            for (int k = 0; k < 2; ++k) F.push_back(random_projection(rng, alg));
            CommutingBounds b = commuting_bounds_multi(random_projection(rng, alg), F);
            ++r.instances;
            if (b.steps > n) r.passed = false;
            for (const auto& f : F)
                if (!predicates(b.upper, f).commuting || !predicates(b.lower, f).commuting) r.passed = false;
            r.metric = std::max(r.metric, static_cast<double>(b.steps));
        }
    });
    run("wedge.angle-rate", [&](Rng&, CheckResult& r) {
        r.passed = true;
        const double tol = 1e-12;
        for (double theta : {0.3, 0.5, 0.7, 0.9, 1.2}) {
            auto [p, q] = angle_pair(Algebra::matrix(2), theta);
            IterativeWedge w = wedge_iterative(p, q, tol);
            const double c2 = std::cos(theta) * std::cos(theta);
            const long long bound = static_cast<long long>(std::ceil(std::log(tol) / std::log(c2))) + 1;
            ++r.instances;
            if (!w.converged || w.iterations > bound || w.value.rank() != 0) r.passed = false;
        }
    });
}

// ---- pmap ----

std::vector<uint32_t> random_hom_table(Rng& rng, int m, int k) {
    std::vector<int> f(k);
    for (auto& v : f) v = uniform_int(rng, 0, m - 1);
    std::vector<uint32_t> vals(1u << m);
    for (uint32_t S = 0; S < vals.size(); ++S) {
        uint32_t out = 0;
        for (int y = 0; y < k; ++y)
            if ((S >> f[y]) & 1u) out |= 1u << y;
        vals[S] = out;
    }
    return vals;
}

void pmap_suite(Runner& run) {
    const int count = run.cfg.count;
    run("extend.square-identity", [&](Rng& rng, CheckResult& r) {
        for (int i = 0; i < count; ++i) {
            const int n = uniform_int(rng, 2, dim_cap(run.cfg, 4));
            Algebra mat = Algebra::matrix(n, run.cfg.tol);
            std::vector<std::pair<PMapTable, Algebra>> tables;
            tables.emplace_back(PMapTable::identity(mat), mat);
            tables.emplace_back(PMapTable::collapse(mat, random_projection(rng, mat)), mat);
            tables.emplace_back(PMapTable::diagonal_dominant(), Algebra::matrix(2));
            Algebra com = Algebra::commutative(n, run.cfg.tol);
            tables.emplace_back(PMapTable::boolean(n, n + 1, random_hom_table(rng, n, n + 1)), com);
            for (const auto& [s, alg] : tables) {
                Element x = random_psd_grid(rng, alg);
                Element sx = extend_pmap(s, x);
                double err = (extend_pmap(s, x.square()) - sx.square()).norm() / std::max(1.0, x.norm() * x.norm());
                r.metric = std::max(r.metric, err);
                ++r.instances;
            }
        }
        r.passed = r.metric <= 1e-10;
        r.detail = "max relative |σ(x²) - σ(x)²| = " + num(r.metric);
    });
    run("coherent-lift.cross-section", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        for (int i = 0; i < count; ++i) {
            const int nx = uniform_int(rng, 1, 6), ny = uniform_int(rng, 1, nx);
            QSpec q{ny, std::vector<int>(nx)};
            for (int x = 0; x < nx; ++x) q.labels[x] = x < ny ? x : uniform_int(rng, 0, ny - 1);
            std::shuffle(q.labels.begin(), q.labels.end(), rng);
            CoherentLift s = coherent_lift(q, rng());
            ++r.instances;
            if (!verify_lift(q, s).ok()) r.passed = false;
        }
    });
    run("decorations.identity", [&](Rng& rng, CheckResult& r) {
        r.passed = true;
        Algebra alg = Algebra::matrix(2, run.cfg.tol);
        std::vector<Projection> fam{Projection::zero(alg), Projection::unit(alg)};
        for (int i = 0; i < count; ++i) {
            Projection p = Projection(Element(alg, random_projection_matrix(rng, 2, 1)));
            fam.push_back(p);
            fam.push_back(p.complement());
        }
        auto pairs = all_pairs(fam);
        PMapTable id = PMapTable::identity(alg);
        for (Decoration d : {Decoration::o, Decoration::co, Decoration::c, Decoration::a, Decoration::a_wedge,
                             Decoration::a_vee, Decoration::wedge, Decoration::vee}) {
            DecorationReport rep = check_decoration(id, d, pairs);
            r.instances += rep.checked;
            if (!rep.passed()) r.passed = false;
        }
    });
    run("schwarz.diagonal-dominant", [&](Rng& rng, CheckResult& r) {
        std::vector<NormalInstance> xs;
        Algebra alg = Algebra::matrix(2, run.cfg.tol);
        for (int i = 0; i < 10 * count; ++i) xs.push_back({random_selfadjoint(rng, alg), Element::zero(alg)});
        SchwarzSuiteReport rep = schwarz_suite(PMapTable::diagonal_dominant(), SchwarzKind::ordinary, xs);
        r.instances = static_cast<long long>(xs.size());
        r.metric = rep.min_margin;
        r.passed = rep.passed();
    });
    run("signature.m2-polar", [&](Rng& rng, CheckResult& r) {
        Signature sig = Signature::random(rng, 2);
        SignatureProbe p = signature_search(sig, 2, 100LL * count, rng());
        r.instances = p.samples;
        r.passed = p.polar;
    });
    run("signature.m3-violation", [&](Rng& rng, CheckResult& r) {
        Signature sig = Signature::random(rng, 3);
        SignatureProbe p = signature_search(sig, 3, 100000, rng());
        r.instances = p.samples;
        r.passed = !p.polar;
        r.detail = p.polar ? "no violation found" : "violation after " + std::to_string(p.samples) + " samples";
    });
    run("gamma.obstruction-k2", [&](Rng&, CheckResult& r) {
        Rng srng(kGammaSeed);
        Signature tau = Signature::random(srng, 2);
        ObstructionWitness w = gamma_counterexample(2, tau);
        r.instances = static_cast<long long>(w.basis.size());
        r.passed = w.verified() && w.basis.size() == 4;
        double margin = std::numeric_limits<double>::infinity();
        for (const auto& c : w.checks) margin = std::min(margin, c.dominance_margin);
        r.metric = margin;
    });
    run("winding.examples", [&](Rng&, CheckResult& r) {
        r.passed = winding_obstruction({1, {1.0}}) == 1 && winding_obstruction({0, {0.5, 0.0, 1.0}}) == 2 &&
                   winding_obstruction({0, {1.0}}) == 0;
        r.instances = 3;
    });
    run("filters.boolean", [&](Rng&, CheckResult& r) {
        r.passed = true;
        FiniteLattice L3 = FiniteLattice::boolean(3), L4 = FiniteLattice::boolean(4);
        std::vector<bool> one(L3.size, false);
        one[L3.top] = true;
        FilterReport a = filter_ops(L3, one);
        if (a.classes != L3.size) r.passed = false;
        FilterReport b = filter_ops(L3, principal_filter(L3, 1));
        if (b.classes != 2 || !b.ultra || b.principal_atom != 1) r.passed = false;
        for (int g = 1; g < L4.size; ++g) {
            FilterReport c = filter_ops(L4, principal_filter(L4, g));
            if (!c.ideal || !c.meet_compatible || !c.complement_compatible) r.passed = false;
            ++r.instances;
        }
        r.instances += 2;
    });
}

std::string now_utc() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    cfg.validate();
    std::vector<std::string> which;
    if (name == "all") which = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end()) which = {name};
    else throw std::invalid_argument("unknown suite: " + name);

    SuiteReport rep;
    rep.suite = name;
    rep.config = cfg;
    rep.timestamp = now_utc();
    for (const auto& s : which) {
        Runner run{s, cfg, rep.checks};
        if (s == "poset") poset_suite(run);
        else if (s == "lattice") lattice_suite(run);
        else if (s == "jordan") jordan_suite(run);
        else if (s == "projections") projection_suite(run);
        else pmap_suite(run);
    }
    return rep;
}

// ---- instance generation ----

json gen_instance(const std::string& kind, const json& params, uint64_t seed) {
    Rng rng(seed);
    if (kind == "basic-element") {
        const int m = params.value("spectrum", 3), gens = params.value("gens", 2);
        if (m < 1 || m > 64 || gens < 1 || gens > 64) throw std::invalid_argument("basic-element: bad spectrum/gens");
        json j = io::to_json(random_dyadic_basic(rng, Algebra::commutative(m), gens));
        j["kind"] = "basic-element";
        j["seed"] = seed;
        return j;
    }
    if (kind == "projection-pair") {
        const int n = params.value("dim", 4);
        const double theta = params.value("angle", 0.3);
        if (n < 2 || n > 64 || theta < 0 || theta > std::acos(-1.0) / 2)
            throw std::invalid_argument("projection-pair: dim >= 2 and angle in [0, π/2]");
        Algebra alg = Algebra::matrix(n);
        Mat U = random_unitary(rng, n);
        Vec u = U.col(0), v = U.col(1);
        Projection p = Projection::from_basis(alg, u);
        Projection q = Projection::from_basis(alg, Vec(std::cos(theta) * u + std::sin(theta) * v));
        auto cs = principal_cosines(p, q);
        return {{"kind", "projection-pair"}, {"seed", seed},       {"dim", n},
                {"angle", theta},            {"p", io::to_json(p)}, {"q", io::to_json(q)},
                {"measured_angle", std::acos(std::min(1.0, cs.front()))}};
    }
    if (kind == "pmap-table") {
        const std::string lattice = params.value("lattice", std::string("boolean-3"));
        if (lattice.rfind("boolean-", 0) != 0) throw std::invalid_argument("pmap-table: lattice must be boolean-m");
        const int m = std::stoi(lattice.substr(8));
        const int k = params.value("codomain", m);
        if (m < 1 || m > 12 || k < 1 || k > 20) throw std::invalid_argument("pmap-table: sizes out of range");
        json j = io::boolean_table_json(m, k, random_hom_table(rng, m, k),
                                        {Decoration::o, Decoration::co, Decoration::c, Decoration::a,
                                         Decoration::a_wedge, Decoration::a_vee, Decoration::wedge, Decoration::vee});
        j["seed"] = seed;
        return j;
    }
    throw std::invalid_argument("unknown instance kind: " + kind);
}

}  // namespace oplat

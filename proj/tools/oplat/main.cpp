#include "oplat/instances.hpp"
#include "oplat/io.hpp"
#include "oplat/pmap.hpp"
#include "oplat/poset.hpp"
#include "oplat/projlattice.hpp"
#include "oplat/suite.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace oplat;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

uint64_t seed_or_env(const CLI::Option* opt, uint64_t flag_value) {
    if (opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("OPLAT_SEED")) {
        try {
            size_t used = 0;
            uint64_t v = std::stoull(env, &used, 0);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError("OPLAT_SEED is not an integer: " + std::string(env));
    }
    return flag_value;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
    if (!f) throw UsageError("write failed: " + out);
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    throw UsageError("--format must be json or csv");
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oplat: operator-lattice verification toolkit"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    double tol = 1e-10;
    int dims = 4, count = 10;
    std::string out, format = "json";

    // suite
    auto* suite = app.add_subcommand("suite", "run a verification suite and write its report");
    std::string suite_name;
    suite->add_option("name", suite_name, "lattice | jordan | projections | pmap | poset | all")->required();
    auto* suite_seed = suite->add_option("--seed", seed, "64-bit seed (default: $OPLAT_SEED, else 1)");
    suite->add_option("--tol", tol, "algebra tolerance");
    suite->add_option("--dims", dims, "dimension cap");
    suite->add_option("--count", count, "instances per randomized check");
    suite->add_option("--out", out, "report path (default stdout)");
    suite->add_option("--format", format, "json | csv");
    bool quiet = false;
    suite->add_flag("-q,--quiet", quiet, "no per-check summary on stderr");

    // gen
    auto* gen = app.add_subcommand("gen", "emit a seeded instance as JSON");
    std::string kind;
    json params = json::object();
    int spectrum = 3, gens = 2, gdim = 4, codomain = 0;
    double angle = 0.3;
    std::string lattice = "boolean-3";
    gen->add_option("kind", kind, "basic-element | projection-pair | pmap-table")->required();
    auto* gen_seed = gen->add_option("--seed", seed);
    gen->add_option("--spectrum", spectrum);
    gen->add_option("--gens", gens);
    gen->add_option("--dim", gdim);
    gen->add_option("--angle", angle);
    gen->add_option("--lattice", lattice);
    gen->add_option("--codomain", codomain);
    gen->add_option("--out", out);

    // pmap check
    auto* pmap = app.add_subcommand("pmap", "projection-map tools");
    auto* check = pmap->add_subcommand("check", "check decorations of a pmap table");
    std::string table_path, decorations;
    check->add_option("--table", table_path, "table JSON")->required();
    check->add_option("--decorations", decorations, "comma list, e.g. o,c,a (default: claimed)");
    check->add_option("--out", out);
    pmap->require_subcommand(1);

    // witness
    auto* witness = app.add_subcommand("witness", "emit the Γ obstruction witness");
    int wk = 2;
    uint64_t wseed = kGammaSeed;
    witness->add_option("--k", wk, "second tensor factor dimension (2..4)");
    witness->add_option("--seed", wseed);
    witness->add_option("--out", out);

    // projections pairs
    auto* proj = app.add_subcommand("projections", "projection lattice tools");
    auto* pairs = proj->add_subcommand("pairs", "per-pair CSV: angles, iterations, gap to oracle");
    auto* pairs_seed = pairs->add_option("--seed", seed);
    pairs->add_option("--dims", dims);
    pairs->add_option("--count", count);
    pairs->add_option("--tol", tol, "iteration tolerance");
    pairs->add_option("--out", out);
    proj->require_subcommand(1);

    // poset complete
    auto* poset = app.add_subcommand("poset", "finite poset tools");
    auto* complete = poset->add_subcommand("complete", "completion of a poset given as JSON");
    std::string poset_path;
    complete->add_option("--poset", poset_path, "{\"size\": n, \"pairs\": [[i, j], ...]}")->required();
    complete->add_option("--out", out);
    poset->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (suite->parsed()) {
            SuiteConfig cfg;
            cfg.seed = seed_or_env(suite_seed, seed);
            cfg.tol = tol;
            cfg.count = count;
            cfg.max_dim = dims;
            cfg.out = out;
            cfg.format = parse_format(format);
            try {
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            if (suite_name != "all" && std::find(suite_names().begin(), suite_names().end(), suite_name) ==
                                           suite_names().end())
                throw UsageError("unknown suite: " + suite_name);
            SuiteReport rep = run_suite(suite_name, cfg);
            emit(rep.render(cfg.format), cfg.out);
            if (!quiet)
                for (const auto& c : rep.checks)
                    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << c.instances << ")"
                              << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
            return rep.passed() ? kPass : kFail;
        }

        if (gen->parsed()) {
            if (kind == "basic-element") params = {{"spectrum", spectrum}, {"gens", gens}};
            else if (kind == "projection-pair") params = {{"dim", gdim}, {"angle", angle}};
            else if (kind == "pmap-table") {
                params = {{"lattice", lattice}};
                if (codomain > 0) params["codomain"] = codomain;
            } else throw UsageError("unknown instance kind: " + kind);
            json j;
            try {
                j = gen_instance(kind, params, seed_or_env(gen_seed, seed));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            emit(j.dump(2) + "\n", out);
            return kPass;
        }

        if (check->parsed()) {
            PMapTable t;
            try {
                t = io::pmap_from_json(read_json(table_path));
            } catch (const std::invalid_argument& e) {
                throw UsageError(table_path + ": " + e.what());
            }
            std::vector<Decoration> ds;
            if (decorations.empty()) ds.assign(t.claimed.begin(), t.claimed.end());
            else {
                try {
                    ds = parse_decorations(decorations);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            auto test_set = all_pairs(boolean_family(t.domain_alg));
            json results = json::array();
            bool ok = true;
            for (Decoration d : ds) {
                DecorationReport r = check_decoration(t, d, test_set);
                json fails = json::array();
                for (const auto& f : r.failures)
                    fails.push_back({{"first", mask_of(test_set[f.first].first)},
                                     {"second", mask_of(test_set[f.first].second)},
                                     {"detail", f.detail}});
                results.push_back({{"decoration", decoration_name(d)},
                                   {"passed", r.passed()},
                                   {"checked", r.checked},
                                   {"vacuous", r.vacuous},
                                   {"exhaustive", true},
                                   {"failures", fails}});
                ok = ok && r.passed();
            }
            emit(json{{"table", t.name}, {"results", results}, {"passed", ok}}.dump(2) + "\n", out);
            return ok ? kPass : kFail;
        }

        if (witness->parsed()) {
            if (wk < 2 || wk > 4) throw UsageError("--k must be in 2..4");
            Rng srng(wseed);
            Signature tau = Signature::random(srng, 2);
            ObstructionWitness w = gamma_counterexample(wk, tau, wseed);
            emit(io::witness_json(w).dump(2) + "\n", out);
            return w.verified() ? kPass : kFail;
        }

        if (pairs->parsed()) {
            if (dims < 2 || dims > 8 || count < 1) throw UsageError("--dims in [2, 8] and --count >= 1");
            Rng rng(seed_or_env(pairs_seed, seed));
            std::ostringstream os;
            os << "dim,index,rank_p,rank_q,principal_angles,iterations,converged,gap_to_oracle\n";
            bool ok = true;
            for (int n = 2; n <= dims; ++n) {
                Algebra alg = Algebra::matrix(n);
                for (int i = 0; i < count; ++i) {
                    Projection p = random_projection(rng, alg), q = random_projection(rng, alg);
                    IterativeWedge w = wedge_iterative(p, q, tol > 0 ? tol : 1e-12);
                    double gap = w.value.base().max_abs_diff(wedge_exact(p, q).base());
                    std::string angles;
                    for (double c : principal_cosines(p, q)) {
                        if (!angles.empty()) angles += ' ';
                        angles += num(std::acos(c));
                    }
                    os << n << ',' << i << ',' << p.rank() << ',' << q.rank() << ',' << angles << ','
                       << w.iterations << ',' << (w.converged ? 1 : 0) << ',' << num(gap) << '\n';
                    ok = ok && w.converged && gap <= 1e-8;
                }
            }
            emit(os.str(), out);
            return ok ? kPass : kFail;
        }

        if (complete->parsed()) {
            FinitePoset P;
            try {
                P = io::poset_from_json(read_json(poset_path));
            } catch (const std::invalid_argument& e) {
                throw UsageError(poset_path + ": " + e.what());
            }
            CompletionLattice L = build_completion(P);
            json cuts = json::array();
            for (const auto& c : L.cuts) {
                json up = json::array();
                for (size_t s = c.upper.find_first(); s != Bits::npos; s = c.upper.find_next(s))
                    up.push_back(s);
                cuts.push_back(up);
            }
            json j = {{"size", L.size()},
                      {"cuts", cuts},
                      {"embedding", L.embedding},
                      {"bottom", L.bottom},
                      {"top", L.top},
                      {"order", io::to_json(L.as_poset())},
                      {"axioms_ok", check_lattice_axioms(L).ok}};
            emit(j.dump(2) + "\n", out);
            return kPass;
        }
    } catch (const UsageError& e) {
        std::cerr << "oplat: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "oplat: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}

#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace oplat {

enum class ReportFormat { json, csv };

struct SuiteConfig {
    uint64_t seed = 1;
    double tol = 1e-10;
    int count = 10;    // instances per randomized check
    int max_dim = 4;   // clamped to each module's cap
    std::string out;   // empty: no file
    ReportFormat format = ReportFormat::json;

    void validate() const;  // throws std::invalid_argument
};

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    long long instances = 0;
    double metric = 0;   // worst error or least margin, per check
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    SuiteConfig config;
    std::string timestamp;  // header only; excluded from determinism comparisons
    std::vector<CheckResult> checks;

    bool passed() const;
    nlohmann::json to_json(bool with_timestamp = true) const;
    std::string render(ReportFormat f, bool with_timestamp = true) const;
};

const std::vector<std::string>& suite_names();  // lattice, jordan, projections, pmap, poset
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);  // "all" runs every suite in order

// Kinds: basic-element, projection-pair, pmap-table.
nlohmann::json gen_instance(const std::string& kind, const nlohmann::json& params, uint64_t seed);

// FNV-1a; per-check seeds are cfg.seed mixed with the check name.
uint64_t stable_hash(const std::string& s);
uint64_t derive_seed(uint64_t seed, const std::string& name);

}  // namespace oplat

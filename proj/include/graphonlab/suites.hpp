#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graphonlab/common.hpp"

namespace graphonlab {
namespace suites {

// A suite runs one family of theorem-level checks over seeded instances and
// writes results.csv (long format), summary.json and plot-ready CSVs.
struct SuiteConfig {
    std::string suite;
    uint64_t seed = 7193;
    int jobs = 0;  // 0 = library default thread count
    std::string out_dir = "out";
    std::string tol_profile = "default";

    int cases = -1;             // -1 = suite default
    std::vector<int> k_grid;    // sampling-decay sample sizes
    int trials = -1;            // sampling-decay trials per k
    std::vector<int> m_steps;   // regularity step counts
    double hidden_coeff = 6.0;  // hidden-feature coefficient preset (6 or 4)
    double cover_coeff = 2.0;   // covering exponent coefficient preset (2 or 9/4)
    bool natural_log = false;   // sampling-rate log base

    nlohmann::json to_json() const;
    static SuiteConfig from_json(const nlohmann::json& j);
};

struct ResultRow {
    std::string case_name;
    std::string metric;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string suite;
    bool pass = false;
    int failures = 0;
    std::vector<ResultRow> rows;
    // Timing lives here and in summary.json, never in results.csv, so that
    // reruns with one config stay byte-identical.
    double runtime_seconds = 0.0;
    double runtime_bound = 0.0;  // 0 = no runtime requirement
    bool runtime_ok = true;
};

const std::vector<std::string>& suite_names();

// Runs the suite and writes artifacts under cfg.out_dir. Never throws on an
// invariant failure; the result carries pass/fail per row.
SuiteResult run_suite(const SuiteConfig& cfg);

std::string results_csv_text(const SuiteResult& r);

}  // namespace suites
}  // namespace graphonlab

#pragma once

#include <string>
#include <vector>

namespace regabs::cli {

struct RunConfig {
    std::string subcommand;  // abstract | verify | simulate | explain | corpus
    std::string system_path;
    std::string predicates_path;
    std::string properties_path;
    std::string property;               // property name inside the .rprop file
    std::vector<long long> extents = {2, 3};
    size_t iterations = 0;              // fixpoint bound; 0 = skip the fixpoint
    size_t refine_rounds = 0;           // 0 = no refinement loop
    bool progress = false;              // check the progress condition instead
    size_t clause_budget = 64;
    std::string solver_path;            // empty: REGABS_SOLVER or bundled
    int solver_timeout_ms = 10000;
    std::vector<std::pair<std::string, long long>> params;  // simulate
    long long data_lo = 0, data_hi = 2;
    std::string format = "text";        // text | json
    std::string dot_dir;                // empty: no DOT dumps
    std::string corpus_dir;
    unsigned seed = 0;                  // reproducibility pin (recorded in reports)
    size_t jobs = 1;
};

struct RunResult {
    int exit_code = 0;     // 0 proved/done, 1 counterexample, 2 unknown, 3 usage
    std::string report;    // rendered per config.format
};

RunResult run(const RunConfig& config);
RunResult explain(const RunConfig& config);

// Structural check of the JSON report (report schema documented in the
// README); returns an error message or empty.
std::string validate_report_json(const std::string& json_text);

}  // namespace regabs::cli

#pragma once

// Orchestration behind the command-line tool: family listings, populating
// the L-value cache, and the experiment reports.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cqlab/arith.hpp"
#include "cqlab/report.hpp"
#include "cqlab/ring.hpp"

namespace cqlab {

struct RunConfig {
    Family family = Family::Cubic;
    u64 xmax = 10000;
    std::vector<double> xsweep;  // empty means {xmax}
    std::vector<double> ks{1.0};
    std::vector<u64> twists{1};
    std::vector<u64> cs{1, 2, 3, 5, 8};
    std::string cache = "lvalues.csv";
    unsigned threads = 0;  // 0: available parallelism
    std::string out = ".";
    std::string method = "afe";  // afe, direct or both
    double slack = 2.0;
    std::vector<u64> ladder{2};
    u64 y = 100;
    std::vector<int> ms{1, 2, 3, 4};
    double threshold = 1e-4;
    double afe_target = 5e-11;

    // Throws UsageError.
    void validate() const;
    std::vector<double> sweep() const;
    // Everything that determines report contents; paths and the thread
    // count are left out so reports compare byte for byte across runs.
    nlohmann::ordered_json to_json() const;
};

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"first-moment", "moments",      "polya",    "holder",
                                                "logbound",     "nonvanishing", "primesum", "constants"};
    return names;
}

// Writes <out>/family_<family>_<xmax>.csv and returns its path.
std::string cmd_enumerate(const RunConfig& config);

struct LValuesSummary {
    std::size_t members = 0;
    std::size_t computed = 0;
    std::size_t skipped = 0;
    double max_abs_difference = 0.0;  // method "both" only
    std::string compare_path;         // method "both" only
};

// Fills the cache for every member with q <= xmax, skipping rows already
// present, appending as chunks finish, and rewriting in canonical order.
// With method "both", AFE values go to the cache and
// <out>/lvalues_compare_<family>_<xmax>.csv lists |afe - direct| per member.
LValuesSummary cmd_lvalues(const RunConfig& config);

// Builds one experiment's report from the cache. Throws UsageError for an
// unknown name and MissingLValues when the cache does not cover the sweep.
MomentReport run_experiment(const RunConfig& config, std::string_view which);

// The five constants of a family as JSON.
nlohmann::ordered_json constants_json(Family family);

// Writes report files (or constants_<family>.json) under config.out and
// returns the written paths.
std::vector<std::string> cmd_experiment(const RunConfig& config, std::string_view which);
std::string cmd_constants(const RunConfig& config);

}  // namespace cqlab

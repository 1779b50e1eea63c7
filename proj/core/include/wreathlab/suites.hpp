#pragma once

#include <string>
#include <vector>

#include "wreathlab/report.hpp"

namespace wreathlab {

struct SuiteOptions {
    Budgets budgets;
    std::uint64_t seed = 0;
    std::size_t d = 4;
    std::size_t dimc = 2;
    std::string cache_dir;
    std::string schedule_file; // overrides the built-in stage data
};

struct SuiteResult {
    Report report{"(unnamed)"};
    bool pass = false;
    bool inconclusive = false;
};

/// Names accepted by run_suite, in documentation order.
const std::vector<std::string>& known_suites();

/// Runs one named verification suite.  Unknown names throw
/// std::invalid_argument; capacity problems surface as CapacityError.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

} // namespace wreathlab

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nablafrac::verify {

struct SuiteResult {
    int criterion = 0;
    std::string name;
    bool passed = false;
    long checks = 0;
    long failures = 0;
    std::string detail;   // first failure, or telemetry for passing suites
};

struct Options {
    std::uint64_t seed = 7;
    bool parallel = false;   // sweep parallelism, capped by NABLA_FRAC_THREADS
};

/// Run every acceptance criterion. Results are deterministic for a fixed
/// seed regardless of the parallel flag.
std::vector<SuiteResult> run_all(const Options& opt);

/// One pass/fail line per criterion plus a summary; true when all passed.
bool report(const std::vector<SuiteResult>& results, std::ostream& out);

} // namespace nablafrac::verify

#pragma once

// Programmatic verification suites. Each criterion builds its seeded corpus,
// runs the checks at pinned tolerances, and reports one pass/fail line.
// Independent corpus items are distributed across workers; aggregation is
// ordered by item index, so results are deterministic for a fixed seed.

#include <cstdint>
#include <string>
#include <vector>

namespace idq::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

/// Runs acceptance criterion `index` (1-based, 1..11). `count` scales the
/// corpus size where the criterion is corpus-based; 0 selects the pinned
/// default. `workers` = 0 reads the IDQ_WORKERS environment variable
/// (defaulting to the hardware concurrency, capped at 8).
CheckResult run_criterion(int index, std::uint64_t seed, std::uint32_t count = 0,
                          unsigned workers = 0);

/// Named suite -> criteria mapping:
///   oracle   {1, 6}    sandwich {2, 5}   thm3 {3}   thm4 {4}
///   thm7     {7}       thm8     {9}      klpair {8} ddpi {10, 11}
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::uint32_t count = 0,
                      unsigned workers = 0);

std::vector<std::string> suite_names();

unsigned resolve_workers(unsigned requested);

}  // namespace idq::verify

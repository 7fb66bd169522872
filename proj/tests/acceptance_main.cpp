// Acceptance suite: runs every verification criterion at its pinned corpus
// size and tolerance, printing one pass/fail line each. Exits nonzero if any
// criterion fails or a timed criterion exceeds its runtime budget.

#include <chrono>
#include <cstdio>
#include <string>

#include "idq/verify.hpp"

namespace {

struct TimedBudget {
    int criterion;
    double seconds;
};

// Runtime budgets attached to the corpus-heavy criteria.
constexpr TimedBudget kBudgets[] = {{1, 60.0}, {2, 120.0}};

double budget_for(int criterion) {
    for (const auto& b : kBudgets) {
        if (b.criterion == criterion) return b.seconds;
    }
    return 0.0;
}

}  // namespace

int main() {
    constexpr std::uint64_t kSeed = 1;
    int failures = 0;
    for (int criterion = 1; criterion <= 11; ++criterion) {
        const auto start = std::chrono::steady_clock::now();
        idq::verify::CheckResult result = idq::verify::run_criterion(criterion, kSeed);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        bool pass = result.pass;
        std::string detail = result.detail;
        const double budget = budget_for(criterion);
        if (budget > 0.0) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), " [%.1fs of %.0fs budget]", elapsed, budget);
            detail += buf;
            if (elapsed > budget) pass = false;
        }
        std::printf("%s criterion %2d: %s -- %s\n", pass ? "PASS" : "FAIL", criterion,
                    result.name.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

#include "idq/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "idq/bounds.hpp"
#include "idq/construct.hpp"
#include "idq/core.hpp"
#include "idq/exact.hpp"
#include "idq/instances.hpp"

namespace idq::verify {

namespace {

unsigned hardware_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return std::min(hw, 8u);
}

template <typename Fn>
void parallel_for_indexed(std::size_t n, unsigned workers, const Fn& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string format_sci(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

/// A random binary-input instance with nonnegligible mutual information;
/// regenerates deterministically until I(X;Y) >= floor.
JointDistribution binary_instance(std::uint64_t seed, std::uint32_t outputs, double conc,
                                  double floor = 2e-4) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        JointDistribution j =
            instances::random_instance(2, outputs, mix_seed(seed, attempt), conc);
        if (mutual_information(j) >= floor) return j;
    }
    // Deterministic fallback with plenty of information.
    return instances::bec_instance(0.5);
}

double concentration_cycle(std::size_t i) {
    constexpr double cycle[] = {0.3, 1.0, 3.0, 0.1};
    return cycle[i % 4];
}

/// The spanning corpus item for criteria 2/3: a random binary instance
/// diluted to a log-grid target in [1e-4, 1] (clamped to the instance's own
/// information). Every 25th item is an erasure instance hitting the target
/// exactly, which covers the top of the range including beta = 1.
JointDistribution spanning_binary_instance(std::uint64_t seed, std::size_t i, std::size_t total) {
    const double frac = total > 1 ? static_cast<double>(i) / static_cast<double>(total - 1) : 1.0;
    const double target = std::pow(10.0, -4.0 * (1.0 - frac));
    if (i % 25 == 7) {
        return instances::bec_instance(target);
    }
    JointDistribution base = binary_instance(seed, 3 + static_cast<std::uint32_t>(i % 10),
                                             concentration_cycle(i));
    const double mi = mutual_information(base);
    const double beta = std::min(target, mi * 0.999);
    return instances::dilute_to_beta(base, std::max(beta, 1e-6));
}

struct Violation {
    bool failed = false;
    std::string detail;
};

CheckResult summarize(const std::string& name, std::vector<Violation>& items,
                      const std::string& ok_detail) {
    for (const auto& v : items) {
        if (v.failed) return {name, false, v.detail};
    }
    return {name, true, ok_detail};
}

// ---- criterion implementations -------------------------------------------

CheckResult criterion_oracle_equivalence(std::uint64_t seed, std::uint32_t count,
                                         unsigned workers) {
    const std::size_t n = count ? count : 500;
    std::vector<Violation> items(n);
    std::atomic<double> worst{0.0};
    parallel_for_indexed(n, workers, [&](std::size_t i) {
        const std::uint32_t outputs = 3 + static_cast<std::uint32_t>(i % 7);  // 3..9
        const std::uint32_t levels = 2 + static_cast<std::uint32_t>(i % 3);   // 2..4
        JointDistribution j = binary_instance(mix_seed(seed, i), outputs, concentration_cycle(i));
        const double dp = exact::optimal_binary_quantizer(j, levels).value;
        const double oracle = exact::brute_force_quantizer(j, levels).value;
        const double gap = std::abs(dp - oracle);
        double cur = worst.load();
        while (gap > cur && !worst.compare_exchange_weak(cur, gap)) {
        }
        if (gap > 1e-9) {
            items[i].failed = true;
            items[i].detail = "instance " + std::to_string(i) + ": dp=" + format_sci(dp) +
                              " oracle=" + format_sci(oracle);
        }
    });
    return summarize("oracle equivalence (dp vs exhaustive)", items,
                     std::to_string(n) + " instances, max |dp - oracle| = " +
                         format_sci(worst.load()));
}

CheckResult criterion_sandwich_lower(std::uint64_t seed, std::uint32_t count, unsigned workers) {
    const std::size_t n = count ? count : 500;
    constexpr std::uint32_t level_cycle[] = {2, 3, 4, 8, 16, 32, 64};
    std::vector<Violation> items(n);
    std::atomic<double> worst{1.0};
    parallel_for_indexed(n, workers, [&](std::size_t i) {
        JointDistribution j = spanning_binary_instance(seed, i, n);
        const double beta = mutual_information(j);
        if (beta <= 0.0) return;
        const std::uint32_t levels = level_cycle[i % 7];
        const double dp = exact::optimal_binary_quantizer(j, levels).value;
        const double t = (static_cast<double>(levels) - 1.0) /
                         std::max(std::log2(1.0 / beta), 1.0);
        const double lower = beta * bounds::distill_fraction_lower(t);
        const double slack = dp - lower;
        double cur = worst.load();
        while (slack < cur && !worst.compare_exchange_weak(cur, slack)) {
        }
        if (dp < lower - 1e-9) {
            items[i].failed = true;
            items[i].detail = "instance " + std::to_string(i) + ": dp=" + format_sci(dp) +
                              " < lower=" + format_sci(lower) + " at beta=" + format_sci(beta) +
                              " M=" + std::to_string(levels);
        }
    });
    return summarize("per-instance distillation lower bound", items,
                     std::to_string(n) + " instances, min slack = " + format_sci(worst.load()));
}

CheckResult criterion_geometric_guarantee(std::uint64_t seed, std::uint32_t count,
                                          unsigned workers) {
    const std::size_t n = count ? count : 500;
    std::vector<Violation> items(n + 8);
    parallel_for_indexed(n, workers, [&](std::size_t i) {
        JointDistribution j = spanning_binary_instance(seed, i, n);
        const double beta = mutual_information(j);
        if (beta <= 0.0) return;
        for (double eta : {0.5, 0.9}) {
            auto [q, plan] = construct::geometric_quantizer(j, eta);
            const double achieved = quantized_mi(j, q);
            if (achieved < eta * beta) {
                items[i].failed = true;
                items[i].detail = "instance " + std::to_string(i) + " eta=" + format_sci(eta) +
                                  ": achieved " + format_sci(achieved) + " < " +
                                  format_sci(eta * beta);
            }
        }
    });
    std::size_t slot = n;
    for (double beta : {1e-1, 1e-2, 1e-3, 1e-4}) {
        JointDistribution j = instances::bec_instance(beta);
        for (double eta : {0.5, 0.9}) {
            auto [q, plan] = construct::geometric_quantizer(j, eta);
            const double achieved = quantized_mi(j, q);
            if (achieved < eta * mutual_information(j)) {
                items[slot].failed = true;
                items[slot].detail = "erasure beta=" + format_sci(beta) +
                                     " eta=" + format_sci(eta) + ": achieved " +
                                     format_sci(achieved);
            }
        }
        ++slot;
    }
    return summarize("geometric binning retention guarantee", items,
                     std::to_string(n) + " instances x {0.5, 0.9} plus erasure grid, "
                     "zero violations");
}

CheckResult criterion_hard_family(std::uint64_t seed, std::uint32_t count, unsigned workers) {
    (void)seed;
    (void)count;
    constexpr double betas[] = {1e-2, 1e-3, 1e-4};
    constexpr std::uint32_t level_grid[] = {2, 4, 8, 16};
    std::vector<Violation> items(3);
    std::vector<std::array<double, 4>> dp_values(3);
    parallel_for_indexed(3, workers, [&](std::size_t bi) {
        const double beta = betas[bi];
        const double r = instances::bms_r_for_beta(beta);
        JointDistribution j = instances::bms_hard_instance({r, 4096});
        for (std::size_t mi_i = 0; mi_i < 4; ++mi_i) {
            const std::uint32_t levels = level_grid[mi_i];
            const double dp = exact::optimal_binary_quantizer(j, levels).value;
            dp_values[bi][mi_i] = dp;
            const double cap = bounds::hard_family_upper(levels, beta);
            if (dp > cap + 1e-9) {
                items[bi].failed = true;
                items[bi].detail = "beta=" + format_sci(beta) + " M=" + std::to_string(levels) +
                                   ": dp=" + format_sci(dp) + " exceeds cap=" + format_sci(cap);
            }
        }
    });
    // Near-tightness at the smallest beta: the 2-level optimum is within a
    // factor 4 of the cap.
    const double cap2 = bounds::hard_family_upper(2, 1e-4);
    const double tight_ratio = cap2 / dp_values[2][0];
    if (!(tight_ratio <= 4.0)) {
        return {"hard mixture family cap and tightness", false,
                "cap/dp ratio at M=2, beta=1e-4 is " + format_sci(tight_ratio) + " > 4"};
    }
    return summarize("hard mixture family cap and tightness", items,
                     "caps hold for M in {2,4,8,16}; cap/dp at M=2, beta=1e-4 = " +
                         format_sci(tight_ratio));
}

CheckResult criterion_bec_ratios(std::uint64_t, std::uint32_t, unsigned) {
    JointDistribution j = instances::bec_instance(1e-3);
    const double beta = mutual_information(j);
    const double dp = exact::optimal_binary_quantizer(j, 2).value;
    const double dp_ratio = dp / beta;
    // The threshold rule on the erasure channel ties on the erased symbol;
    // its nominal value is the coin-randomized one.
    const double map_ratio = construct::map_randomized_mi(j) / beta;
    const bool ok = dp_ratio >= 0.4999 && dp_ratio <= 0.5010 && map_ratio <= 1e-3;
    return {"erasure ratio limits at beta = 1e-3", ok,
            "optimal 2-level retention " + format_sci(dp_ratio) + ", threshold-rule retention " +
                format_sci(map_ratio)};
}

CheckResult criterion_mod4(std::uint64_t, std::uint32_t, unsigned workers) {
    std::vector<Violation> items(21);
    parallel_for_indexed(21, workers, [&](std::size_t gi) {
        const double delta = static_cast<double>(gi) / 20.0;
        JointDistribution j = instances::mod4_instance(delta);
        const double two = exact::brute_force_quantizer(j, 2).value;
        const double formula = instances::mod4_two_level_mi(delta);
        if (std::abs(two - formula) > 1e-9) {
            items[gi].failed = true;
            items[gi].detail = "delta=" + format_sci(delta) + ": brute=" + format_sci(two) +
                               " formula=" + format_sci(formula);
            return;
        }
        const double four = mutual_information(j);
        const bool excluded = (gi == 5 || gi == 20);  // delta = 1/4 and 1
        if (!excluded && !(2.0 * two < four)) {
            items[gi].failed = true;
            items[gi].detail = "delta=" + format_sci(delta) + ": doubling gap is not strict";
        }
    });
    return summarize("four-symbol doubling counterexample", items,
                     "21-point grid matches the closed form; 2 I2 < I4 off the excluded points");
}

CheckResult criterion_one_hot(std::uint64_t seed, std::uint32_t count, unsigned workers) {
    const std::size_t n = count ? count : 200;
    std::vector<Violation> items(n);
    parallel_for_indexed(n, workers, [&](std::size_t i) {
        const std::uint32_t k_in = 3 + static_cast<std::uint32_t>(i % 3);   // 3..5
        const std::uint32_t outs = 4 + static_cast<std::uint32_t>(i % 7);   // 4..10
        JointDistribution j = [&] {
            for (int attempt = 0;; ++attempt) {
                JointDistribution cand = instances::random_instance(
                    k_in, outs, mix_seed(seed ^ 0xabcdefULL, i * 64 + attempt),
                    concentration_cycle(i));
                if (mutual_information(cand) >= 1e-4 || attempt >= 63) return cand;
            }
        }();
        const double beta = mutual_information(j);
        if (beta <= 0.0) return;
        struct Cfg {
            double eta;
            std::optional<std::uint32_t> cap;
        };
        const Cfg cfgs[] = {{0.2, 1u}, {0.3, std::nullopt}};
        for (const auto& cfg : cfgs) {
            if (cfg.cap && !(cfg.eta < static_cast<double>(*cfg.cap) / (k_in - 1.0))) continue;
            auto [q, plan] = construct::one_hot_quantizer(j, cfg.eta, cfg.cap);
            const double achieved = quantized_mi(j, q);
            if (achieved < cfg.eta * beta) {
                items[i].failed = true;
                items[i].detail = "instance " + std::to_string(i) + " eta=" + format_sci(cfg.eta) +
                                  (cfg.cap ? " cap=" + std::to_string(*cfg.cap) : "") +
                                  ": achieved " + format_sci(achieved) + " < " +
                                  format_sci(cfg.eta * beta);
            }
        }
    });
    return summarize("one-hot product retention guarantee", items,
                     std::to_string(n) + " instances, zero violations");
}

CheckResult criterion_kl_pair(std::uint64_t seed, std::uint32_t count, unsigned workers) {
    (void)seed;
    const std::size_t n = count ? count : 20;
    std::vector<Violation> items(n);
    parallel_for_indexed(n, workers, [&](std::size_t i) {
        instances::KlPairSpec spec;
        spec.k = 1 + static_cast<std::uint32_t>(i % 4);
        spec.T = 6 + static_cast<std::uint32_t>(i % 7);  // 6..12
        spec.alpha = 0.1 + 0.9 * static_cast<double>(i % 10) / 9.0;
        if (spec.k >= spec.T) spec.k = spec.T - 1;
        instances::KlPair pair = instances::kl_pair_instance(spec);
        const double numeric = kl_divergence(pair.p, pair.q);
        if (std::abs(numeric - pair.closed_form_divergence) > 1e-9) {
            items[i].failed = true;
            items[i].detail = "spec " + std::to_string(i) + ": numeric=" + format_sci(numeric) +
                              " closed=" + format_sci(pair.closed_form_divergence);
            return;
        }
        for (std::uint32_t levels : {2u, 3u}) {
            auto [q, psi] = exact::brute_force_divergence_quantizer(pair.p, pair.q, levels);
            const double cap = instances::kl_pair_quantized_bound(spec, levels);
            if (psi > cap + 1e-12) {
                items[i].failed = true;
                items[i].detail = "spec " + std::to_string(i) + " M=" + std::to_string(levels) +
                                  ": psi=" + format_sci(psi) + " exceeds cap=" + format_sci(cap);
            }
        }
    });
    return summarize("dyadic divergence pair", items,
                     std::to_string(n) + " specs: closed form matches, quantized caps hold");
}

CheckResult criterion_entropy_coding(std::uint64_t, std::uint32_t, unsigned workers) {
    constexpr double betas[] = {1e-3, 1e-4};
    std::vector<Violation> items(2);
    parallel_for_indexed(2, workers, [&](std::size_t bi) {
        const double beta = betas[bi];
        const double r = instances::bms_r_for_beta(beta);
        JointDistribution j = instances::bms_hard_instance({r, 4096});
        auto [q, plan] = construct::geometric_quantizer(j, 0.5);
        const double h = construct::quantizer_entropy(j, q);
        const double cap = std::log2(std::log2(std::log2(1.0 / beta))) + 12.0;
        if (h > cap) {
            items[bi].failed = true;
            items[bi].detail = "beta=" + format_sci(beta) + ": H(f(Y))=" + format_sci(h) +
                               " exceeds " + format_sci(cap);
        }
    });
    return summarize("entropy of the geometric quantizer output", items,
                     "H(f(Y)) within the iterated-log cap at beta in {1e-3, 1e-4}");
}

CheckResult criterion_additive_gap(std::uint64_t seed, std::uint32_t count, unsigned workers) {
    const std::size_t n = count ? count : 200;
    std::vector<Violation> items(n);
    parallel_for_indexed(n, workers, [&](std::size_t i) {
        const std::uint32_t outputs = 8 + static_cast<std::uint32_t>(i % 5);  // 8..12
        JointDistribution j =
            binary_instance(mix_seed(seed ^ 0x5a5a5aULL, i), outputs, concentration_cycle(i));
        const double beta = mutual_information(j);
        for (std::uint32_t levels : {4u, 8u}) {
            const double dp = exact::optimal_binary_quantizer(j, levels).value;
            const double cap = 1268.0 / (static_cast<double>(levels) * levels);
            if (beta - dp > cap) {
                items[i].failed = true;
                items[i].detail = "instance " + std::to_string(i) + " M=" + std::to_string(levels) +
                                  ": gap " + format_sci(beta - dp) + " exceeds " + format_sci(cap);
            }
        }
    });
    return summarize("additive degrading-cost gap", items,
                     std::to_string(n) + " instances, M in {4, 8}, zero violations");
}

CheckResult criterion_structural(std::uint64_t seed, std::uint32_t count, unsigned workers) {
    const std::size_t n = count ? count : 120;
    std::vector<Violation> items(n);
    parallel_for_indexed(n, workers, [&](std::size_t i) {
        auto fail = [&](const std::string& what) {
            items[i].failed = true;
            items[i].detail = "instance " + std::to_string(i) + ": " + what;
        };
        const std::uint32_t outputs = 5 + static_cast<std::uint32_t>(i % 8);  // 5..12
        JointDistribution j =
            binary_instance(mix_seed(seed ^ 0xc0ffeeULL, i), outputs, concentration_cycle(i));
        const double beta = mutual_information(j);

        // Simple sandwich at a cycling level count.
        const std::uint32_t levels = 2 + static_cast<std::uint32_t>(i % 5);
        const double dp = exact::optimal_binary_quantizer(j, levels).value;
        const double lower = (static_cast<double>(levels) - 1.0) / outputs * beta;
        const double upper = std::min(beta, std::log2(static_cast<double>(levels)));
        if (dp < lower - 1e-9 || dp > upper + 1e-9) {
            fail("simple sandwich violated: dp=" + format_sci(dp));
            return;
        }

        // Monotonicity in the level count.
        double prev = 0.0;
        for (std::uint32_t m = 1; m <= 6; ++m) {
            const double v = exact::optimal_binary_quantizer(j, m).value;
            if (v < prev - 1e-12) {
                fail("value decreased from M=" + std::to_string(m - 1));
                return;
            }
            prev = v;
        }

        // Saturation at the merged alphabet size.
        const double sat =
            exact::optimal_binary_quantizer(j, static_cast<std::uint32_t>(outputs)).value;
        if (std::abs(sat - beta) > 1e-9) {
            fail("saturation mismatch: " + format_sci(sat) + " vs " + format_sci(beta));
            return;
        }

        // Data processing through a random degradation (a surjective merge).
        {
            instances::Rng rng(mix_seed(seed ^ 0xfadedULL, i));
            const std::uint32_t reduced = 3 + static_cast<std::uint32_t>(rng.next_u64() % 3);
            std::vector<std::uint32_t> merge_labels(outputs);
            for (std::uint32_t y = 0; y < outputs; ++y) {
                merge_labels[y] = y < reduced ? y
                                              : static_cast<std::uint32_t>(rng.next_u64() % reduced);
            }
            Quantizer degrade(std::move(merge_labels), reduced);
            JointDistribution degraded = apply_quantizer(j, degrade);
            for (std::uint32_t m : {2u, 3u}) {
                const double v_orig = exact::optimal_binary_quantizer(j, m).value;
                const double v_degr = exact::optimal_binary_quantizer(degraded, m).value;
                if (v_degr > v_orig + 1e-9) {
                    fail("data processing violated at M=" + std::to_string(m));
                    return;
                }
            }
        }

        // Two-stage quantization keeps the guaranteed fraction.
        if (outputs > 8) {
            const double inner = exact::optimal_binary_quantizer(j, 8).value;
            Quantizer two = construct::double_quantize(j, 8, 3);
            if (quantized_mi(j, two) < (3.0 - 1.0) / 8.0 * inner - 1e-9) {
                fail("two-stage fraction violated");
                return;
            }
        }

        // Dilution hits its target exactly.
        if (beta > 2e-4) {
            const double target = beta * 0.37;
            JointDistribution diluted = instances::dilute_to_beta(j, target);
            if (std::abs(mutual_information(diluted) - target) > 1e-10) {
                fail("dilution target missed");
                return;
            }
        }
    });
    return summarize("structural invariant sweep", items,
                     std::to_string(n) + " instances: sandwich, monotonicity, saturation, "
                     "data processing, two-stage, dilution");
}

using CriterionFn = CheckResult (*)(std::uint64_t, std::uint32_t, unsigned);

struct CriterionSpec {
    int index;
    CriterionFn fn;
};

const CriterionSpec kCriteria[] = {
    {1, criterion_oracle_equivalence},
    {2, criterion_sandwich_lower},
    {3, criterion_geometric_guarantee},
    {4, criterion_hard_family},
    {5, criterion_bec_ratios},
    {6, criterion_mod4},
    {7, criterion_one_hot},
    {8, criterion_kl_pair},
    {9, criterion_entropy_coding},
    {10, criterion_additive_gap},
    {11, criterion_structural},
};

}  // namespace

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("IDQ_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    return hardware_workers();
}

CheckResult run_criterion(int index, std::uint64_t seed, std::uint32_t count, unsigned workers) {
    for (const auto& c : kCriteria) {
        if (c.index == index) {
            return c.fn(seed, count, resolve_workers(workers));
        }
    }
    throw DomainError("unknown criterion index " + std::to_string(index));
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::uint32_t count,
                      unsigned workers) {
    static const std::vector<std::pair<std::string, std::vector<int>>> kSuites = {
        {"oracle", {1, 6}}, {"sandwich", {2, 5}}, {"thm3", {3}},  {"thm4", {4}},
        {"thm7", {7}},      {"thm8", {9}},        {"klpair", {8}}, {"ddpi", {10, 11}},
    };
    for (const auto& [suite, indices] : kSuites) {
        if (suite == name) {
            SuiteResult result;
            result.suite = name;
            for (int idx : indices) {
                result.checks.push_back(run_criterion(idx, seed, count, workers));
            }
            return result;
        }
    }
    throw DomainError("unknown verify suite '" + name + "'");
}

std::vector<std::string> suite_names() {
    return {"oracle", "sandwich", "thm3", "thm4", "thm7", "thm8", "klpair", "ddpi"};
}

}  // namespace idq::verify

#pragma once

// Closed-form lower and upper bounds on the information-distillation function
// ID_M(K, beta) = inf { I(X; [Y]_M) : |X| = K, I(X;Y) >= beta }, together
// with level-budget and degrading-cost evaluators. Pure functions of their
// scalar arguments; all values in bits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idq/bounds_report.hpp"

namespace idq::bounds {

/// Lower fraction of the binary distillation sandwich:
/// t/208 for t < 104, 1 - 52/t for t >= 104. Continuous at t = 104 and
/// nondecreasing.
double distill_fraction_lower(double t);

/// Upper fraction of the binary distillation sandwich: min{3t, 1}.
double distill_fraction_upper(double t);

/// Sandwich on ID_M(2, beta): both fractions evaluated at
/// t = (M-1) / max{log2(1/beta), 1} and scaled by beta.
BoundReport id2_bounds(std::uint32_t levels, double beta);

struct IdkLowerResult {
    double value = 0.0;          // beta * max_k a_k
    std::uint32_t best_k = 0;    // maximizing index in {0, ..., K-1}
    std::vector<double> a;       // the clamped a_k values
};

/// Lower bound on ID_M(K, beta) for K >= 3 as the best of the K per-route
/// fractions a_0..a_{K-1}; negative routes clamp to zero.
IdkLowerResult idk_lower(std::uint32_t levels, std::uint32_t input_size, double beta);

/// Constant nu(K) of the additive degrading-cost bound
/// I(X;Y) - I(X;[Y]_M) <= nu(K) M^(-2/(K-1)). Uses the exact half-integer
/// Gamma recursion. nu(2) is slightly above 1267.
double additive_gap_constant(std::uint32_t input_size);

struct DegradingCostBounds {
    double kt_bound = 0.0;                // nu(K) M^(-2/(K-1))
    std::optional<double> improved;       // 1268 (K-1) M^(-2/(K-1)), when valid
};

/// Degrading-cost bounds. The improved constant applies only when
/// M^(1/(K-1)) is an integer >= 4; otherwise it is absent.
DegradingCostBounds degrading_cost_bounds(std::uint32_t input_size, std::uint32_t levels);

/// Lower bound on the 2-level retention of the posterior-threshold quantizer:
/// beta + 2/5 - h(1/5) below beta = 3/5, and 1 - h((1-beta)/2) above.
/// Continuous at the branch point.
double map_lower_bound(double beta);

struct HighSnrBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Two-sided bounds on ID_2(2, beta) for beta in [3/5, 1]:
/// 1 - h((1-beta)/2) <= ID <= 1 - ((2-beta)/2) h((1-beta)/(2-beta)).
HighSnrBounds high_snr_bounds(double beta);

struct SdpiBound {
    double sharp = 0.0;    // (1 - 2 h^{-1}(1 - beta/n))^2 log2(M)
    double relaxed = 0.0;  // 2 beta log2(M) / (n log2(e)), always >= sharp
};

/// Contraction bound on ID_M(2^n, beta) through the n-fold product channel.
/// Requires n > beta.
SdpiBound sdpi_bound(std::uint32_t n, std::uint32_t levels, double beta);

struct LevelBudgets {
    double binary = 0.0;                  // floor(c1(eta) max{log2(1/beta), 1})
    std::optional<double> k_ary;          // product budget for K >= 3
    std::optional<double> with_bit_cap;   // budget when a bit cap k is given
};

/// Level budgets sufficient for an eta-fraction of beta, with
/// c1(eta) = 52/(1-eta). Values are floored but returned as doubles since the
/// k-ary budgets overflow 64-bit integers already for moderate K.
LevelBudgets level_budgets(double eta, double beta, std::uint32_t input_size,
                           std::optional<std::uint32_t> bit_cap = {});

/// Upper bound 2 M beta / ln(e log2(e) / (2 beta)) achieved by the hard
/// mixture family; vacuous (may exceed beta) once M is large.
double hard_family_upper(std::uint32_t levels, double beta);

/// Entropy of the geometric-binning quantizer output:
/// log2 log2 log2 (1/beta) - log2(1-eta) + log2(-log2(1-eta)) + 11.
/// Requires log2(1/beta) > 2 so the iterated logarithms are real.
double entropy_coding_bound(double eta, double beta);

}  // namespace idq::bounds

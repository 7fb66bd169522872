#pragma once

// Constructive quantizers with provable retention guarantees: the greedy
// top-symbol selection, the posterior-threshold (MAP) rule, geometric
// divergence binning for binary inputs, its one-hot product extension for
// larger input alphabets, and two-stage quantization.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "idq/core.hpp"

namespace idq::construct {

/// Parameter bundle of the geometric divergence-binning construction.
///
/// Symbols are binned by d(alpha_y || alpha_bar) against the edges
/// edges[0] = 0 < edges[1] <= ... <= edges[half_levels], split by which side
/// of alpha_bar the posterior falls on; the top bin is unbounded above. The
/// edges grow geometrically: edges[1] = margin * mi and
/// edges[l] = edges[1] * growth^(l-1), with growth = (edges[1]/max_divergence)^(-1/half_levels).
struct GeometricPlan {
    double target_fraction = 0.0;  // requested fraction of I(X;Y)
    double mi = 0.0;               // I(X;Y) of the instance, bits
    double max_divergence = 0.0;   // max{log 1/p1, log 1/(1-p1)}, bits
    double margin = 0.0;           // (1 - target_fraction) / 2
    std::uint32_t half_levels = 0; // bins per posterior side
    double growth = 1.0;           // geometric ratio between edges
    std::vector<double> edges;     // divergence thresholds, size half_levels + 1
};

/// Bookkeeping of the one-hot product construction. Index i (1-based in the
/// arrays below, stored 0-based) refers to the indicator of input letter i
/// conditioned on all previous indicators being zero.
struct OneHotPlan {
    std::vector<double> event_prob;      // p_i = Pr(previous indicators all 0)
    std::vector<double> conditional_mi;  // I_i, bits
    std::vector<double> share;           // v_i = I_i p_i / I(X;Y); sums to 1
    std::vector<std::uint32_t> order;    // indices sorted by share, descending
    std::vector<double> cumulative;      // running sum of sorted shares
    std::uint32_t selected = 0;          // how many sorted indices are used
    double split_fraction = 0.0;         // eta_bar
    double per_bit_fraction = 0.0;       // eta' = eta / eta_bar
    std::vector<std::uint32_t> per_bit_levels;  // levels of each selected bit
};

/// Keeps the top `levels - 1` output symbols by P_Y(y) D(P_{X|Y=y} || P_X) in
/// singleton cells (ties by index) and merges the rest. Retains at least a
/// (levels-1)/N fraction of I(X;Y).
Quantizer greedy_top_quantizer(const JointDistribution& j, std::uint32_t levels);

/// Binary quantizer thresholding the posterior P(X=1|Y=y) at 1/2. Symbols at
/// exactly 1/2 are assigned by evaluating both bulk choices and keeping the
/// larger mutual information.
Quantizer map_quantizer(const JointDistribution& j);

/// Mutual information of the threshold rule when posterior ties are broken by
/// an external fair coin shared across all tied symbols: the induced channel
/// splits each tied symbol's mass evenly between the two cells. On channels
/// with many ties this is strictly below the value of map_quantizer, which
/// always picks the better deterministic completion.
double map_randomized_mi(const JointDistribution& j);

/// Geometric divergence binning for a binary-input joint. Guarantees
/// quantized MI >= target_fraction * I(X;Y) with 2 * half_levels + 1 cells.
/// A zero-information instance degenerates to a single cell.
std::pair<Quantizer, GeometricPlan> geometric_quantizer(const JointDistribution& j,
                                                        double target_fraction);

/// One-hot product construction for input alphabets of size >= 3. Splits the
/// target fraction as eta_bar = sqrt(eta), or eta_bar = bit_cap/(K-1) when a
/// bit cap is given (requires eta < bit_cap/(K-1) and bit_cap <= K-2), picks
/// the smallest prefix of bits by share reaching eta_bar, and runs the
/// geometric construction per selected bit at fraction eta/eta_bar.
/// Guarantees quantized MI >= eta * I(X;Y).
std::pair<Quantizer, OneHotPlan> one_hot_quantizer(const JointDistribution& j, double eta,
                                                   std::optional<std::uint32_t> bit_cap = {});

/// Optimal `inner_levels` quantizer followed by the greedy reduction to
/// `outer_levels` cells. Achieves at least (outer_levels-1)/inner_levels of
/// the inner optimum. Binary inputs use the exact DP; larger alphabets fall
/// back to exhaustive search under its guard.
Quantizer double_quantize(const JointDistribution& j, std::uint32_t inner_levels,
                          std::uint32_t outer_levels);

/// Entropy of the quantizer output pmf, H(f(Y)).
double quantizer_entropy(const JointDistribution& j, const Quantizer& q);

}  // namespace idq::construct

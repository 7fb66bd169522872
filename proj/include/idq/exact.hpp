#pragma once

// Exact optimal quantizers.
//
// For binary inputs the optimum is attained by a partition of the output
// symbols that is contiguous once they are sorted by posterior, so a layered
// dynamic program over sorted prefixes finds it. Small instances of any input
// size are handled by exhaustive enumeration of set partitions, which doubles
// as the independent oracle for the DP.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "idq/core.hpp"

namespace idq::exact {

enum class Method {
    dp_contiguous,
    brute_force_partitions,
    brute_force_contiguous,
};

struct OptResult {
    Quantizer quantizer;
    double value = 0.0;  // achieved I(X; f(Y)) in bits
    Method method = Method::dp_contiguous;
};

struct MergeResult {
    JointDistribution joint;             // one column per distinct posterior
    std::vector<std::uint32_t> mapping;  // original symbol -> merged column
};

/// Merges output symbols whose posteriors coincide (per-coordinate absolute
/// tolerance 1e-10). Zero-probability symbols are folded into the first
/// merged class; they carry no posterior and do not affect any information
/// quantity. Mutual information is preserved exactly.
MergeResult merge_equal_posteriors(const JointDistribution& j);

/// Globally optimal quantizer for a binary-input joint.
///
/// Merges equal posteriors, sorts the remaining symbols by P(X=1 | Y=y)
/// ascending (ties by original index), and solves the contiguous-partition
/// problem with at most M blocks. If M covers every distinct posterior the
/// identity-grade quantizer with value I(X;Y) is returned.
OptResult optimal_binary_quantizer(const JointDistribution& j, std::uint32_t levels);

/// Exhaustive search over all partitions of the output alphabet into at most
/// `levels` nonempty blocks, enumerated as restricted-growth strings in
/// lexicographic order. Guarded to output alphabets of size <= 12. The
/// returned quantizer is the lexicographically smallest maximizer.
OptResult brute_force_quantizer(const JointDistribution& j, std::uint32_t levels);

/// Exhaustive search restricted to partitions that are contiguous in the
/// posterior order; binary-input oracle for the DP. Guarded to <= 24 symbols.
OptResult brute_force_contiguous_quantizer(const JointDistribution& j, std::uint32_t levels);

/// Exhaustive maximization of D(P^f || Q^f) over all quantizers into at most
/// `levels` cells. Requires p absolutely continuous w.r.t. q and an alphabet
/// of size <= 13. The value never exceeds D(p || q).
std::pair<Quantizer, double> brute_force_divergence_quantizer(const Pmf& p, const Pmf& q,
                                                              std::uint32_t levels);

namespace detail {

/// Visits every partition of {0..n-1} into at most `max_blocks` blocks as a
/// restricted-growth string, in lexicographic order. The visitor receives the
/// label array and the number of blocks used.
void for_each_partition(std::size_t n, std::uint32_t max_blocks,
                        const std::function<void(const std::vector<std::uint32_t>&, std::uint32_t)>& visit);

/// DP core on symbols already sorted by posterior. strategy: true selects the
/// divide-and-conquer layer evaluation (relies on the interval cost being
/// totally monotone, which holds for posterior-sorted binary impurity),
/// false the plain quadratic scan. Both return identical values; the
/// quadratic path is kept as a reference for tests.
OptResult optimal_binary_quantizer_impl(const JointDistribution& j, std::uint32_t levels,
                                        bool divide_and_conquer);

}  // namespace detail

}  // namespace idq::exact

#include "idq/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace idq::exact {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct SortedBinary {
    // Joint mass per sorted symbol, split by input letter.
    std::vector<double> m0, m1;
    // Prefix sums, length n+1.
    std::vector<double> c0, c1;
    // sorted position -> merged column index
    std::vector<std::uint32_t> column;
    double log_px0 = 0.0, log_px1 = 0.0;
};

// Mass-weighted divergence of a block of sorted symbols [i, j) from the input
// pmf: sum_x s_x log2( (s_x / s) / px_x ).
inline double block_gain(const SortedBinary& sb, std::size_t i, std::size_t j) {
    const double s0 = sb.c0[j] - sb.c0[i];
    const double s1 = sb.c1[j] - sb.c1[i];
    const double s = s0 + s1;
    double v = xlog2(s0) + xlog2(s1) - xlog2(s);
    if (s0 > 0.0) v -= s0 * sb.log_px0;
    if (s1 > 0.0) v -= s1 * sb.log_px1;
    return v;
}

SortedBinary sort_by_posterior(const JointDistribution& j) {
    const std::size_t n = j.output_size();
    std::vector<double> a(n), w(n);
    std::vector<std::uint32_t> order;
    order.reserve(n);
    for (std::size_t y = 0; y < n; ++y) {
        const double p0 = j.joint(0, y);
        const double p1 = j.joint(1, y);
        const double py = p0 + p1;
        w[y] = py;
        a[y] = py > 0.0 ? p1 / py : 0.0;
        if (py > 0.0) order.push_back(static_cast<std::uint32_t>(y));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t lhs, std::uint32_t rhs) { return a[lhs] < a[rhs]; });
    SortedBinary sb;
    const std::size_t m = order.size();
    sb.m0.resize(m);
    sb.m1.resize(m);
    sb.column = std::move(order);
    for (std::size_t i = 0; i < m; ++i) {
        sb.m0[i] = j.joint(0, sb.column[i]);
        sb.m1[i] = j.joint(1, sb.column[i]);
    }
    sb.c0.assign(m + 1, 0.0);
    sb.c1.assign(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        sb.c0[i + 1] = sb.c0[i] + sb.m0[i];
        sb.c1[i + 1] = sb.c1[i] + sb.m1[i];
    }
    sb.log_px0 = std::log2(j.px()[0]);
    sb.log_px1 = std::log2(j.px()[1]);
    return sb;
}

// One DP layer by divide and conquer over the monotone argmax. Fills
// cur[lo..hi] where cur[j] = max_{i in [minI, j-1]} prev[i] + gain(i, j).
void dc_layer(const SortedBinary& sb, const std::vector<double>& prev, std::vector<double>& cur,
              std::vector<std::uint32_t>& choice, std::size_t lo, std::size_t hi, std::size_t optLo,
              std::size_t optHi, std::size_t minI) {
    if (lo > hi) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    double best = kNegInf;
    std::size_t bestI = optLo;
    const std::size_t from = std::max(optLo, minI);
    const std::size_t to = std::min(optHi, mid - 1);
    for (std::size_t i = from; i <= to; ++i) {
        if (prev[i] == kNegInf) continue;
        const double v = prev[i] + block_gain(sb, i, mid);
        if (v > best) {
            best = v;
            bestI = i;
        }
    }
    cur[mid] = best;
    choice[mid] = static_cast<std::uint32_t>(bestI);
    if (mid > lo) dc_layer(sb, prev, cur, choice, lo, mid - 1, optLo, bestI, minI);
    if (mid < hi) dc_layer(sb, prev, cur, choice, mid + 1, hi, bestI, optHi, minI);
}

void quadratic_layer(const SortedBinary& sb, const std::vector<double>& prev,
                     std::vector<double>& cur, std::vector<std::uint32_t>& choice, std::size_t n,
                     std::size_t minI) {
    for (std::size_t jj = minI + 1; jj <= n; ++jj) {
        double best = kNegInf;
        std::size_t bestI = minI;
        for (std::size_t i = minI; i < jj; ++i) {
            if (prev[i] == kNegInf) continue;
            const double v = prev[i] + block_gain(sb, i, jj);
            if (v > best) {
                best = v;
                bestI = i;
            }
        }
        cur[jj] = best;
        choice[jj] = static_cast<std::uint32_t>(bestI);
    }
}

}  // namespace

MergeResult merge_equal_posteriors(const JointDistribution& j) {
    const std::size_t k = j.input_size();
    const std::size_t n = j.output_size();
    Posterior post = posterior_decomposition(j);

    std::vector<std::uint32_t> mapping(n, 0);
    std::vector<std::uint32_t> representative;  // original index per class
    representative.reserve(n);

    if (k == 2) {
        // Fast path: group by the scalar posterior, adjacent-chained after a
        // sort, so N in the thousands stays cheap.
        std::vector<std::uint32_t> order;
        for (std::size_t y = 0; y < n; ++y) {
            if (post.alpha[y]) order.push_back(static_cast<std::uint32_t>(y));
        }
        std::stable_sort(order.begin(), order.end(), [&](std::uint32_t l, std::uint32_t r) {
            return (*post.alpha[l])[1] < (*post.alpha[r])[1];
        });
        double prev = -1.0;
        for (std::uint32_t y : order) {
            const double a = (*post.alpha[y])[1];
            if (representative.empty() || a - prev > kStructuralTol) {
                representative.push_back(y);
            }
            mapping[y] = static_cast<std::uint32_t>(representative.size() - 1);
            prev = a;
        }
    } else {
        for (std::size_t y = 0; y < n; ++y) {
            if (!post.alpha[y]) continue;
            bool joined = false;
            for (std::size_t c = 0; c < representative.size(); ++c) {
                const Pmf& rep = *post.alpha[representative[c]];
                const Pmf& cur = *post.alpha[y];
                double diff = 0.0;
                for (std::size_t x = 0; x < k; ++x) {
                    diff = std::max(diff, std::abs(rep[x] - cur[x]));
                }
                if (diff <= kStructuralTol) {
                    mapping[y] = static_cast<std::uint32_t>(c);
                    joined = true;
                    break;
                }
            }
            if (!joined) {
                representative.push_back(static_cast<std::uint32_t>(y));
                mapping[y] = static_cast<std::uint32_t>(representative.size() - 1);
            }
        }
    }

    if (representative.empty()) {
        // Degenerate: every output symbol has zero probability is impossible
        // for a valid joint, so at least one class always exists.
        throw DomainError("joint distribution has no output symbol with positive probability");
    }
    // Zero-probability symbols join class 0; adding zero mass changes nothing.
    for (std::size_t y = 0; y < n; ++y) {
        if (!post.alpha[y]) mapping[y] = 0;
    }

    const std::uint32_t classes = static_cast<std::uint32_t>(representative.size());
    std::vector<std::vector<double>> merged(k, std::vector<double>(classes, 0.0));
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            merged[x][mapping[y]] += j.channel(x, y);
        }
    }
    return MergeResult{JointDistribution(j.px(), std::move(merged)), std::move(mapping)};
}

namespace detail {

OptResult optimal_binary_quantizer_impl(const JointDistribution& j, std::uint32_t levels,
                                        bool divide_and_conquer) {
    if (j.input_size() != 2) {
        throw DomainError("optimal_binary_quantizer requires a binary input alphabet");
    }
    if (levels == 0) {
        throw DomainError("level count must be at least 1");
    }

    MergeResult merged = merge_equal_posteriors(j);
    const std::size_t n_orig = j.output_size();

    SortedBinary sb = sort_by_posterior(merged.joint);
    const std::size_t n = sb.m0.size();

    if (levels >= n) {
        // Every distinct posterior gets its own cell: value is I(X;Y).
        std::vector<std::uint32_t> cell_of_column(merged.joint.output_size(), 0);
        for (std::size_t i = 0; i < n; ++i) cell_of_column[sb.column[i]] = static_cast<std::uint32_t>(i);
        std::vector<std::uint32_t> labels(n_orig);
        for (std::size_t y = 0; y < n_orig; ++y) labels[y] = cell_of_column[merged.mapping[y]];
        return OptResult{Quantizer(std::move(labels), levels), mutual_information(j),
                         Method::dp_contiguous};
    }

    const std::uint32_t m_blocks = levels;
    std::vector<double> prev(n + 1, kNegInf), cur(n + 1, kNegInf);
    prev[0] = 0.0;
    std::vector<std::vector<std::uint32_t>> choice(m_blocks, std::vector<std::uint32_t>(n + 1, 0));
    for (std::uint32_t m = 1; m <= m_blocks; ++m) {
        std::fill(cur.begin(), cur.end(), kNegInf);
        cur[0] = 0.0;
        const std::size_t minI = m - 1;  // blocks are nonempty
        if (divide_and_conquer) {
            dc_layer(sb, prev, cur, choice[m - 1], minI + 1, n, minI, n - 1, minI);
        } else {
            quadratic_layer(sb, prev, cur, choice[m - 1], n, minI);
        }
        std::swap(prev, cur);
    }

    // Backtrack the block boundaries of the exactly-m_blocks optimum; with
    // blocks sorted by posterior, more blocks never lose value, so this is
    // also the at-most-m_blocks optimum.
    std::vector<std::uint32_t> cell_of_sorted(n, 0);
    std::size_t end = n;
    for (std::uint32_t m = m_blocks; m >= 1; --m) {
        const std::size_t start = choice[m - 1][end];
        for (std::size_t i = start; i < end; ++i) cell_of_sorted[i] = m - 1;
        end = start;
        if (m == 1) break;
    }

    std::vector<std::uint32_t> cell_of_column(merged.joint.output_size(), 0);
    for (std::size_t i = 0; i < n; ++i) cell_of_column[sb.column[i]] = cell_of_sorted[i];
    std::vector<std::uint32_t> labels(n_orig);
    for (std::size_t y = 0; y < n_orig; ++y) labels[y] = cell_of_column[merged.mapping[y]];

    Quantizer q(std::move(labels), levels);
    return OptResult{std::move(q), std::max(prev[n], 0.0), Method::dp_contiguous};
}

void for_each_partition(std::size_t n, std::uint32_t max_blocks,
                        const std::function<void(const std::vector<std::uint32_t>&, std::uint32_t)>& visit) {
    if (n == 0) return;
    std::vector<std::uint32_t> rgs(n, 0);
    std::vector<std::uint32_t> maxp(n, 0);  // max label among rgs[0..i]
    while (true) {
        std::uint32_t blocks = maxp[n - 1] + 1;
        visit(rgs, blocks);
        // Lexicographic successor under the restricted-growth constraint
        // rgs[i] <= max(rgs[0..i-1]) + 1 and rgs[i] < max_blocks.
        std::size_t i = n;
        while (i-- > 1) {
            const std::uint32_t cap = std::min(maxp[i - 1] + 1, max_blocks - 1);
            if (rgs[i] < cap) {
                ++rgs[i];
                maxp[i] = std::max(maxp[i - 1], rgs[i]);
                for (std::size_t t = i + 1; t < n; ++t) {
                    rgs[t] = 0;
                    maxp[t] = maxp[t - 1];
                }
                break;
            }
            if (i == 1) return;  // rgs[0] is pinned to 0
        }
        if (n == 1) return;
    }
}

}  // namespace detail

OptResult optimal_binary_quantizer(const JointDistribution& j, std::uint32_t levels) {
    return detail::optimal_binary_quantizer_impl(j, levels, true);
}

OptResult brute_force_quantizer(const JointDistribution& j, std::uint32_t levels) {
    const std::size_t n = j.output_size();
    if (n > 12) {
        throw GuardError("brute_force_quantizer is limited to output alphabets of size <= 12");
    }
    if (levels == 0) {
        throw DomainError("level count must be at least 1");
    }
    const std::uint32_t max_blocks = static_cast<std::uint32_t>(std::min<std::size_t>(levels, n));
    const std::size_t k = j.input_size();

    std::vector<double> joint_col(k * n);
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < n; ++y) joint_col[y * k + x] = j.joint(x, y);
    }
    std::vector<double> log_px(k);
    for (std::size_t x = 0; x < k; ++x) log_px[x] = j.px()[x] > 0.0 ? std::log2(j.px()[x]) : 0.0;

    double best = -1.0;
    std::vector<std::uint32_t> best_rgs;
    std::vector<double> s(k * max_blocks);
    detail::for_each_partition(n, max_blocks, [&](const std::vector<std::uint32_t>& rgs,
                                                  std::uint32_t blocks) {
        std::fill(s.begin(), s.begin() + k * blocks, 0.0);
        for (std::size_t y = 0; y < n; ++y) {
            const std::uint32_t b = rgs[y];
            for (std::size_t x = 0; x < k; ++x) s[b * k + x] += joint_col[y * k + x];
        }
        double value = 0.0;
        for (std::uint32_t b = 0; b < blocks; ++b) {
            double pb = 0.0;
            for (std::size_t x = 0; x < k; ++x) pb += s[b * k + x];
            if (pb <= 0.0) continue;
            for (std::size_t x = 0; x < k; ++x) {
                const double sx = s[b * k + x];
                if (sx > 0.0) value += sx * (std::log2(sx / pb) - log_px[x]);
            }
        }
        if (value > best) {
            best = value;
            best_rgs = rgs;
        }
    });

    return OptResult{Quantizer(std::move(best_rgs), levels), std::max(best, 0.0),
                     Method::brute_force_partitions};
}

OptResult brute_force_contiguous_quantizer(const JointDistribution& j, std::uint32_t levels) {
    if (j.input_size() != 2) {
        throw DomainError("brute_force_contiguous_quantizer requires a binary input alphabet");
    }
    if (j.output_size() > 24) {
        throw GuardError("brute_force_contiguous_quantizer is limited to <= 24 symbols");
    }
    if (levels == 0) {
        throw DomainError("level count must be at least 1");
    }

    MergeResult merged = merge_equal_posteriors(j);
    SortedBinary sb = sort_by_posterior(merged.joint);
    const std::size_t n = sb.m0.size();
    const std::size_t blocks = std::min<std::size_t>(levels, n);

    // Choose blocks-1 cut positions out of n-1 and score each contiguous
    // partition directly from the prefix sums.
    std::vector<std::size_t> cuts(blocks - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    double best = -1.0;
    std::vector<std::size_t> best_cuts;
    auto score = [&](const std::vector<std::size_t>& c) {
        double v = 0.0;
        std::size_t prev = 0;
        for (std::size_t cut : c) {
            v += block_gain(sb, prev, cut);
            prev = cut;
        }
        v += block_gain(sb, prev, n);
        return v;
    };
    if (blocks == 1) {
        best = score({});
        best_cuts = {};
    } else {
        bool more = true;
        while (more) {
            const double v = score(cuts);
            if (v > best) {
                best = v;
                best_cuts = cuts;
            }
            // next combination of cut positions
            more = false;
            std::size_t i = cuts.size();
            while (i-- > 0) {
                if (cuts[i] < n - (cuts.size() - i)) {
                    ++cuts[i];
                    for (std::size_t t = i + 1; t < cuts.size(); ++t) cuts[t] = cuts[t - 1] + 1;
                    more = true;
                    break;
                }
            }
        }
    }
    std::vector<std::uint32_t> cell_of_sorted(n, 0);
    {
        std::size_t prev = 0;
        std::uint32_t b = 0;
        for (std::size_t cut : best_cuts) {
            for (std::size_t i = prev; i < cut; ++i) cell_of_sorted[i] = b;
            prev = cut;
            ++b;
        }
        for (std::size_t i = prev; i < n; ++i) cell_of_sorted[i] = b;
    }
    std::vector<std::uint32_t> cell_of_column(merged.joint.output_size(), 0);
    for (std::size_t i = 0; i < n; ++i) cell_of_column[sb.column[i]] = cell_of_sorted[i];
    std::vector<std::uint32_t> labels(j.output_size());
    for (std::size_t y = 0; y < labels.size(); ++y) labels[y] = cell_of_column[merged.mapping[y]];
    return OptResult{Quantizer(std::move(labels), levels), std::max(best, 0.0),
                     Method::brute_force_contiguous};
}

std::pair<Quantizer, double> brute_force_divergence_quantizer(const Pmf& p, const Pmf& q,
                                                              std::uint32_t levels) {
    if (p.size() != q.size()) {
        throw DomainError("divergence quantizer requires matching alphabets");
    }
    if (p.size() > 13) {
        throw GuardError("brute_force_divergence_quantizer is limited to alphabets of size <= 13");
    }
    if (levels == 0) {
        throw DomainError("level count must be at least 1");
    }
    // Absolute continuity check up front so the guard error is distinct.
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0 && q[i] <= 0.0) {
            throw AbsoluteContinuityError("divergence quantizer: p has mass where q has none");
        }
    }

    const std::size_t n = p.size();
    const std::uint32_t max_blocks = static_cast<std::uint32_t>(std::min<std::size_t>(levels, n));
    double best = -1.0;
    std::vector<std::uint32_t> best_rgs;
    std::vector<double> sp(max_blocks), sq(max_blocks);
    detail::for_each_partition(n, max_blocks, [&](const std::vector<std::uint32_t>& rgs,
                                                  std::uint32_t blocks) {
        std::fill(sp.begin(), sp.begin() + blocks, 0.0);
        std::fill(sq.begin(), sq.begin() + blocks, 0.0);
        for (std::size_t y = 0; y < n; ++y) {
            sp[rgs[y]] += p[y];
            sq[rgs[y]] += q[y];
        }
        double value = 0.0;
        for (std::uint32_t b = 0; b < blocks; ++b) {
            if (sp[b] > 0.0) value += sp[b] * std::log2(sp[b] / sq[b]);
        }
        if (value > best) {
            best = value;
            best_rgs = rgs;
        }
    });
    return {Quantizer(std::move(best_rgs), levels), std::max(best, 0.0)};
}

}  // namespace idq::exact

#include "idq/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "idq/exact.hpp"

namespace idq::construct {

namespace {

// Binary divergence d(a || b) in bits, with the 0 log 0 convention.
double binary_kl(double a, double b) {
    double v = 0.0;
    if (a > 0.0) v += a * std::log2(a / b);
    if (a < 1.0) v += (1.0 - a) * std::log2((1.0 - a) / (1.0 - b));
    return std::max(v, 0.0);
}

}  // namespace

Quantizer greedy_top_quantizer(const JointDistribution& j, std::uint32_t levels) {
    if (levels == 0) {
        throw DomainError("level count must be at least 1");
    }
    const std::size_t n = j.output_size();
    if (levels >= n) {
        return identity_quantizer(n);
    }
    Posterior post = posterior_decomposition(j);
    std::vector<double> score(n, 0.0);
    for (std::size_t y = 0; y < n; ++y) {
        if (post.alpha[y]) {
            score[y] = post.py[y] * kl_divergence(*post.alpha[y], j.px());
        }
    }
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t l, std::uint32_t r) { return score[l] > score[r]; });
    std::vector<std::uint32_t> labels(n, levels - 1);
    for (std::uint32_t c = 0; c + 1 < levels; ++c) {
        labels[order[c]] = c;
    }
    return Quantizer(std::move(labels), levels);
}

Quantizer map_quantizer(const JointDistribution& j) {
    if (j.input_size() != 2) {
        throw DomainError("map_quantizer requires a binary input alphabet");
    }
    const std::size_t n = j.output_size();
    Posterior post = posterior_decomposition(j);
    std::vector<std::uint32_t> labels(n, 0);
    std::vector<std::size_t> ties;
    for (std::size_t y = 0; y < n; ++y) {
        if (!post.alpha[y]) continue;  // zero-mass symbols never affect MI
        const double a = (*post.alpha[y])[1];
        if (a > 0.5) {
            labels[y] = 1;
        } else if (a == 0.5) {
            ties.push_back(y);
        }
    }
    if (ties.empty()) {
        return Quantizer(std::move(labels), 2);
    }
    // Posterior exactly 1/2: a single shared coin decides the whole tie
    // group, so evaluating both bulk assignments and keeping the better one
    // is at least as good as any randomization.
    std::vector<std::uint32_t> alt = labels;
    for (std::size_t y : ties) alt[y] = 1;
    Quantizer q0(std::move(labels), 2), q1(std::move(alt), 2);
    return quantized_mi(j, q1) > quantized_mi(j, q0) ? q1 : q0;
}

double map_randomized_mi(const JointDistribution& j) {
    if (j.input_size() != 2) {
        throw DomainError("map_randomized_mi requires a binary input alphabet");
    }
    const std::size_t n = j.output_size();
    Posterior post = posterior_decomposition(j);
    std::vector<std::vector<double>> cells(2, std::vector<double>(2, 0.0));
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < 2; ++x) {
            const double mass = j.channel(x, y);
            if (!post.alpha[y]) {
                cells[x][0] += mass;
                continue;
            }
            const double a = (*post.alpha[y])[1];
            if (a > 0.5) {
                cells[x][1] += mass;
            } else if (a < 0.5) {
                cells[x][0] += mass;
            } else {
                cells[x][0] += 0.5 * mass;
                cells[x][1] += 0.5 * mass;
            }
        }
    }
    return mutual_information(JointDistribution(j.px(), std::move(cells)));
}

std::pair<Quantizer, GeometricPlan> geometric_quantizer(const JointDistribution& j,
                                                        double target_fraction) {
    if (j.input_size() != 2) {
        throw DomainError("geometric_quantizer requires a binary input alphabet");
    }
    if (!(target_fraction > 0.0 && target_fraction < 1.0)) {
        throw DomainError("geometric_quantizer requires a target fraction in (0, 1)");
    }

    const double mi = mutual_information(j);
    const std::size_t n = j.output_size();
    GeometricPlan plan;
    plan.target_fraction = target_fraction;
    plan.mi = mi;
    plan.margin = 0.5 * (1.0 - target_fraction);

    if (mi <= 0.0) {
        // Degenerate instance: nothing to retain.
        plan.max_divergence = 0.0;
        plan.half_levels = 0;
        plan.growth = 1.0;
        plan.edges = {0.0};
        return {Quantizer(std::vector<std::uint32_t>(n, 0), 1), plan};
    }

    const double p1 = j.px()[1];
    plan.max_divergence = std::max(std::log2(1.0 / p1), std::log2(1.0 / (1.0 - p1)));

    const double eta = target_fraction;
    const double L_real = 2.0 * std::log2(2.0 * plan.max_divergence / ((1.0 - eta) * mi)) /
                          (1.0 - eta);
    plan.half_levels = static_cast<std::uint32_t>(std::max(1.0, std::ceil(L_real)));
    const std::uint32_t L = plan.half_levels;

    plan.edges.assign(L + 1, 0.0);
    plan.edges[1] = plan.margin * mi;
    plan.growth = std::pow(plan.edges[1] / plan.max_divergence, -1.0 / static_cast<double>(L));
    for (std::uint32_t l = 2; l <= L; ++l) {
        plan.edges[l] = plan.edges[1] * std::pow(plan.growth, static_cast<double>(l - 1));
    }

    // Cell layout: bin l on the high-posterior side is L + l, on the low side
    // L - l; bin 0 sits at index L. Top bins are unbounded above.
    Posterior post = posterior_decomposition(j);
    std::vector<std::uint32_t> labels(n, L);
    for (std::size_t y = 0; y < n; ++y) {
        if (!post.alpha[y]) continue;
        const double a = (*post.alpha[y])[1];
        const double d = binary_kl(a, p1);
        if (d <= plan.edges[1]) continue;  // bin 0 (includes a == p1 exactly)
        std::uint32_t l = L;
        for (std::uint32_t t = 1; t + 1 <= L; ++t) {
            if (d < plan.edges[t + 1]) {
                l = t;
                break;
            }
        }
        labels[y] = (a > p1) ? L + l : L - l;
    }
    return {Quantizer(std::move(labels), 2 * L + 1), plan};
}

std::pair<Quantizer, OneHotPlan> one_hot_quantizer(const JointDistribution& j, double eta,
                                                   std::optional<std::uint32_t> bit_cap) {
    const std::size_t k_in = j.input_size();
    if (k_in < 3) {
        throw DomainError("one_hot_quantizer requires an input alphabet of size >= 3");
    }
    if (!(eta > 0.0 && eta < 1.0)) {
        throw DomainError("one_hot_quantizer requires eta in (0, 1)");
    }
    const double beta = mutual_information(j);
    if (!(beta > 0.0)) {
        throw DomainError("one_hot_quantizer requires positive mutual information");
    }
    const std::size_t bits = k_in - 1;
    if (bit_cap) {
        if (*bit_cap < 1 || *bit_cap > k_in - 2) {
            throw DomainError("one_hot bit cap must lie in [1, K-2]");
        }
        if (!(eta < static_cast<double>(*bit_cap) / static_cast<double>(bits))) {
            throw DomainError("one_hot bit cap requires eta < bit_cap / (K-1)");
        }
    }

    const std::size_t n = j.output_size();
    OneHotPlan plan;
    plan.event_prob.assign(bits, 0.0);
    plan.conditional_mi.assign(bits, 0.0);
    plan.share.assign(bits, 0.0);

    // Tail probabilities Pr(X >= i) for the conditioning events.
    std::vector<double> tail(k_in + 1, 0.0);
    for (std::size_t x = k_in; x-- > 0;) tail[x] = tail[x + 1] + j.px()[x];

    // Conditional binary joints: indicator of letter i-1 given X >= i-1.
    std::vector<std::optional<JointDistribution>> conditional(bits);
    for (std::size_t i = 1; i <= bits; ++i) {
        const double p_event = tail[i - 1];
        plan.event_prob[i - 1] = p_event;
        if (p_event <= 0.0) continue;
        const double p_hit = j.px()[i - 1] / p_event;
        if (p_hit <= 0.0 || p_hit >= 1.0) continue;  // indicator is deterministic
        std::vector<double> row0(n, 0.0), row1(n, 0.0);
        const double rest = tail[i];
        for (std::size_t y = 0; y < n; ++y) {
            row1[y] = j.channel(i - 1, y);
            double acc = 0.0;
            for (std::size_t x = i; x < k_in; ++x) acc += j.px()[x] * j.channel(x, y);
            row0[y] = acc / rest;
        }
        JointDistribution cj(Pmf({1.0 - p_hit, p_hit}), {std::move(row0), std::move(row1)});
        plan.conditional_mi[i - 1] = mutual_information(cj);
        plan.share[i - 1] = plan.conditional_mi[i - 1] * p_event / beta;
        conditional[i - 1] = std::move(cj);
    }

    plan.order.resize(bits);
    std::iota(plan.order.begin(), plan.order.end(), 0u);
    std::stable_sort(plan.order.begin(), plan.order.end(), [&](std::uint32_t l, std::uint32_t r) {
        return plan.share[l] > plan.share[r];
    });
    plan.cumulative.resize(bits);
    double run = 0.0;
    for (std::size_t t = 0; t < bits; ++t) {
        run += plan.share[plan.order[t]];
        plan.cumulative[t] = run;
    }

    plan.split_fraction = bit_cap ? static_cast<double>(*bit_cap) / static_cast<double>(bits)
                                  : std::sqrt(eta);
    plan.per_bit_fraction = eta / plan.split_fraction;

    plan.selected = static_cast<std::uint32_t>(bits);
    for (std::size_t t = 0; t < bits; ++t) {
        if (plan.cumulative[t] >= plan.split_fraction) {
            plan.selected = static_cast<std::uint32_t>(t + 1);
            break;
        }
    }

    // Cartesian product of the selected per-bit quantizers, flattened
    // row-major over the sorted order. Unoccupied tuples are not compacted.
    std::vector<std::uint32_t> labels(n, 0);
    std::uint64_t total_levels = 1;
    plan.per_bit_levels.clear();
    for (std::uint32_t t = 0; t < plan.selected; ++t) {
        const std::uint32_t i = plan.order[t];
        if (!conditional[i]) {
            throw DomainError("one_hot_quantizer selected a degenerate bit; "
                              "shares must be positive for selected bits");
        }
        auto [bit_q, bit_plan] = geometric_quantizer(*conditional[i], plan.per_bit_fraction);
        plan.per_bit_levels.push_back(bit_q.num_levels);
        total_levels *= bit_q.num_levels;
        if (total_levels > (std::uint64_t{1} << 31)) {
            throw GuardError("one_hot_quantizer product level count exceeds 2^31");
        }
        for (std::size_t y = 0; y < n; ++y) {
            labels[y] = labels[y] * bit_q.num_levels + bit_q.labels[y];
        }
    }
    return {Quantizer(std::move(labels), static_cast<std::uint32_t>(total_levels)), plan};
}

Quantizer double_quantize(const JointDistribution& j, std::uint32_t inner_levels,
                          std::uint32_t outer_levels) {
    if (outer_levels > inner_levels) {
        throw DomainError("double_quantize requires outer_levels <= inner_levels");
    }
    exact::OptResult inner = j.input_size() == 2
                                 ? exact::optimal_binary_quantizer(j, inner_levels)
                                 : exact::brute_force_quantizer(j, inner_levels);
    JointDistribution reduced = apply_quantizer(j, inner.quantizer);
    Quantizer outer = greedy_top_quantizer(reduced, outer_levels);
    return compose(inner.quantizer, outer);
}

double quantizer_entropy(const JointDistribution& j, const Quantizer& q) {
    if (q.labels.size() != j.output_size()) {
        throw DomainError("quantizer domain size does not match output alphabet");
    }
    Pmf py = j.output_marginal();
    std::vector<double> out(q.num_levels, 0.0);
    for (std::size_t y = 0; y < q.labels.size(); ++y) out[q.labels[y]] += py[y];
    double h = 0.0;
    for (double v : out) h -= xlog2(v);
    return std::max(h, 0.0);
}

}  // namespace idq::construct

#include "idq/core.hpp"

#include <algorithm>
#include <cmath>

namespace idq {

namespace {

void check_probability_entry(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " has a negative or non-finite entry");
    }
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw DomainError("pmf must have at least one symbol");
    }
    double sum = 0.0;
    for (double v : probs_) {
        check_probability_entry(v, "pmf");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kPmfSumTol) {
        throw DomainError("pmf entries sum to " + std::to_string(sum) + ", expected 1");
    }
}

Quantizer::Quantizer(std::vector<std::uint32_t> labels_, std::uint32_t num_levels_)
    : labels(std::move(labels_)), num_levels(num_levels_) {
    if (num_levels == 0) {
        throw DomainError("quantizer must have at least one level");
    }
    for (std::uint32_t l : labels) {
        if (l >= num_levels) {
            throw DomainError("quantizer label exceeds level count");
        }
    }
}

Quantizer compose(const Quantizer& first, const Quantizer& second) {
    if (second.labels.size() != first.num_levels) {
        throw DomainError("composition mismatch: outer quantizer domain must equal inner level count");
    }
    std::vector<std::uint32_t> labels(first.labels.size());
    for (std::size_t y = 0; y < first.labels.size(); ++y) {
        labels[y] = second.labels[first.labels[y]];
    }
    return Quantizer(std::move(labels), second.num_levels);
}

Quantizer identity_quantizer(std::size_t n) {
    std::vector<std::uint32_t> labels(n);
    for (std::size_t y = 0; y < n; ++y) labels[y] = static_cast<std::uint32_t>(y);
    return Quantizer(std::move(labels), static_cast<std::uint32_t>(n));
}

JointDistribution::JointDistribution(Pmf px, std::vector<std::vector<double>> channel)
    : px_(std::move(px)) {
    if (px_.size() < 2) {
        throw DomainError("joint distribution requires an input alphabet of size >= 2");
    }
    if (channel.size() != px_.size()) {
        throw DomainError("channel row count must equal input alphabet size");
    }
    cols_ = channel.front().size();
    if (cols_ < 1) {
        throw DomainError("channel must have at least one output symbol");
    }
    channel_.reserve(px_.size() * cols_);
    for (const auto& row : channel) {
        if (row.size() != cols_) {
            throw DomainError("channel rows have inconsistent lengths");
        }
        double sum = 0.0;
        for (double v : row) {
            check_probability_entry(v, "channel row");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kPmfSumTol) {
            throw DomainError("channel row sums to " + std::to_string(sum) + ", expected 1");
        }
        channel_.insert(channel_.end(), row.begin(), row.end());
    }
}

Pmf JointDistribution::output_marginal() const {
    std::vector<double> py(cols_, 0.0);
    for (std::size_t x = 0; x < px_.size(); ++x) {
        for (std::size_t y = 0; y < cols_; ++y) {
            py[y] += joint(x, y);
        }
    }
    // Guard against accumulated rounding pushing the sum outside the pmf
    // tolerance; the mass is exact to a few ulps per term.
    double sum = 0.0;
    for (double v : py) sum += v;
    if (std::abs(sum - 1.0) > kPmfSumTol && sum > 0.0) {
        for (double& v : py) v /= sum;
    }
    return Pmf(std::move(py));
}

std::vector<double> JointDistribution::channel_row(std::size_t x) const {
    return std::vector<double>(channel_.begin() + x * cols_, channel_.begin() + (x + 1) * cols_);
}

Posterior posterior_decomposition(const JointDistribution& j) {
    const std::size_t k = j.input_size();
    const std::size_t n = j.output_size();
    Pmf py = j.output_marginal();
    std::vector<std::optional<Pmf>> alpha(n);
    for (std::size_t y = 0; y < n; ++y) {
        if (py[y] <= 0.0) continue;
        std::vector<double> a(k);
        double sum = 0.0;
        for (std::size_t x = 0; x < k; ++x) {
            a[x] = j.joint(x, y) / py[y];
            sum += a[x];
        }
        for (double& v : a) v /= sum;
        alpha[y] = Pmf(std::move(a));
    }
    return Posterior{std::move(alpha), std::move(py)};
}

double xlog2(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

double entropy(const Pmf& p) {
    double h = 0.0;
    for (double v : p.probs()) h -= xlog2(v);
    return std::max(h, 0.0);
}

double binary_entropy(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("binary_entropy requires t in [0, 1]");
    }
    return -xlog2(t) - xlog2(1.0 - t);
}

double inv_binary_entropy(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("inv_binary_entropy requires t in [0, 1]");
    }
    if (t == 0.0) return 0.0;
    if (t == 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    while (hi - lo > 1e-14) {
        double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double kl_divergence(const Pmf& p, const Pmf& q) {
    if (p.size() != q.size()) {
        throw DomainError("kl_divergence requires matching alphabets");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) {
            throw AbsoluteContinuityError("kl_divergence: p has mass where q has none (symbol " +
                                          std::to_string(i) + ")");
        }
        d += p[i] * std::log2(p[i] / q[i]);
    }
    return std::max(d, 0.0);
}

double mutual_information(const JointDistribution& j) {
    const std::size_t k = j.input_size();
    const std::size_t n = j.output_size();
    double total = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        double py = 0.0;
        for (std::size_t x = 0; x < k; ++x) py += j.joint(x, y);
        if (py <= 0.0) continue;
        // py * D(P_{X|Y=y} || P_X) expanded so zero posterior entries drop out.
        for (std::size_t x = 0; x < k; ++x) {
            const double pxy = j.joint(x, y);
            if (pxy > 0.0) {
                total += pxy * std::log2(pxy / (py * j.px()[x]));
            }
        }
    }
    return std::max(total, 0.0);
}

JointDistribution apply_quantizer(const JointDistribution& j, const Quantizer& q) {
    if (q.labels.size() != j.output_size()) {
        throw DomainError("quantizer domain size does not match output alphabet");
    }
    const std::size_t k = j.input_size();
    std::vector<std::vector<double>> merged(k, std::vector<double>(q.num_levels, 0.0));
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < j.output_size(); ++y) {
            merged[x][q.labels[y]] += j.channel(x, y);
        }
    }
    return JointDistribution(j.px(), std::move(merged));
}

double quantized_mi(const JointDistribution& j, const Quantizer& q) {
    return mutual_information(apply_quantizer(j, q));
}

double log_loss_distortion(const JointDistribution& j, const Quantizer& q) {
    JointDistribution merged = apply_quantizer(j, q);
    const std::size_t k = merged.input_size();
    double h = 0.0;
    for (std::size_t m = 0; m < merged.output_size(); ++m) {
        double pm = 0.0;
        for (std::size_t x = 0; x < k; ++x) pm += merged.joint(x, m);
        if (pm <= 0.0) continue;
        for (std::size_t x = 0; x < k; ++x) {
            const double pxm = merged.joint(x, m);
            if (pxm > 0.0) h -= pxm * std::log2(pxm / pm);
        }
    }
    return std::max(h, 0.0);
}

}  // namespace idq

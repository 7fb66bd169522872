#include "idq/bounds.hpp"

#include <cmath>

#include "idq/core.hpp"

namespace idq::bounds {

namespace {

constexpr double kLog2E = 1.4426950408889634;
constexpr double kSqrtPi = 1.7724538509055160273;

// Gamma at integer or half-integer arguments >= 1/2 by the recursion
// G(x+1) = x G(x) from G(1) = 1 or G(1/2) = sqrt(pi). Exact up to rounding,
// which is all the additive-gap constant needs.
double gamma_half_integer(double x) {
    double value = 1.0;
    if (std::abs(x - std::round(x)) < 0.25) {
        double t = 1.0;
        while (t + 0.5 < x) {
            value *= t;
            t += 1.0;
        }
    } else {
        value = kSqrtPi;
        double t = 0.5;
        while (t + 0.5 < x) {
            value *= t;
            t += 1.0;
        }
    }
    return value;
}

double scaled_argument(std::uint32_t levels, double beta) {
    return (static_cast<double>(levels) - 1.0) / std::max(std::log2(1.0 / beta), 1.0);
}

}  // namespace

double distill_fraction_lower(double t) {
    if (!(t >= 0.0)) {
        throw DomainError("distill_fraction_lower requires t >= 0");
    }
    return t < 104.0 ? t / 208.0 : 1.0 - 52.0 / t;
}

double distill_fraction_upper(double t) {
    if (!(t >= 0.0)) {
        throw DomainError("distill_fraction_upper requires t >= 0");
    }
    return std::min(3.0 * t, 1.0);
}

BoundReport id2_bounds(std::uint32_t levels, double beta) {
    if (levels < 1) {
        throw DomainError("id2_bounds requires at least one level");
    }
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw DomainError("id2_bounds requires beta in (0, 1]");
    }
    const double t = scaled_argument(levels, beta);
    BoundReport report;
    report.beta = beta;
    report.input_size = 2;
    report.levels = levels;
    report.entries.push_back({"distill_lower", BoundKind::lower, beta * distill_fraction_lower(t),
                              "holds for every binary-input joint with this mutual information"});
    report.entries.push_back({"distill_upper", BoundKind::upper, beta * distill_fraction_upper(t),
                              "witnessed by the hard mixture family"});
    return report;
}

IdkLowerResult idk_lower(std::uint32_t levels, std::uint32_t input_size, double beta) {
    if (input_size < 3) {
        throw DomainError("idk_lower requires an input alphabet of size >= 3");
    }
    if (levels < 1) {
        throw DomainError("idk_lower requires at least one level");
    }
    const double K = static_cast<double>(input_size);
    if (!(beta > 0.0 && beta <= std::log2(K))) {
        throw DomainError("idk_lower requires beta in (0, log2(K)]");
    }
    const double M = static_cast<double>(levels);
    const double log_sq = std::log2((K - 1.0) * (K - 1.0) / beta);

    IdkLowerResult result;
    result.a.assign(input_size, 0.0);
    result.a[0] = std::max(0.0, std::min((M - 1.0) / (208.0 * log_sq), 0.5) / (K - 1.0));
    for (std::uint32_t k = 1; k + 1 < input_size; ++k) {
        const double frac = 1.0 - 52.0 * log_sq / std::pow(M, 1.0 / static_cast<double>(k));
        result.a[k] = std::max(0.0, static_cast<double>(k) / (K - 1.0) * frac);
    }
    {
        const double inner = 52.0 * std::log2(std::exp(1.0) * (K - 1.0) / beta) /
                             std::pow(M, 1.0 / (K - 1.0));
        const double root = 1.0 - std::pow(inner, 2.0 / 3.0);
        result.a[input_size - 1] = root > 0.0 ? root * root : 0.0;
    }

    result.best_k = 0;
    for (std::uint32_t k = 1; k < input_size; ++k) {
        if (result.a[k] > result.a[result.best_k]) result.best_k = k;
    }
    result.value = beta * result.a[result.best_k];
    return result;
}

double additive_gap_constant(std::uint32_t input_size) {
    if (input_size < 2) {
        throw DomainError("additive_gap_constant requires an input alphabet of size >= 2");
    }
    const double K = static_cast<double>(input_size);
    const double root = std::sqrt(1.0 + 1.0 / (2.0 * (K - 1.0))) - 1.0;
    const double first = 3.141592653589793238462643 * K * (K - 1.0) / (2.0 * root * root);
    const double second = std::pow(2.0 * K / gamma_half_integer(1.0 + (K - 1.0) / 2.0),
                                   2.0 / (K - 1.0));
    return first * second;
}

DegradingCostBounds degrading_cost_bounds(std::uint32_t input_size, std::uint32_t levels) {
    if (levels < 1) {
        throw DomainError("degrading_cost_bounds requires at least one level");
    }
    const double K = static_cast<double>(input_size);
    const double decay = std::pow(static_cast<double>(levels), -2.0 / (K - 1.0));
    DegradingCostBounds out;
    out.kt_bound = additive_gap_constant(input_size) * decay;
    // The refined constant needs M to be a perfect (K-1)-th power of an
    // integer root >= 4.
    const double root = std::pow(static_cast<double>(levels), 1.0 / (K - 1.0));
    const auto rounded = static_cast<std::uint64_t>(std::llround(root));
    if (rounded >= 4) {
        std::uint64_t power = 1;
        bool overflow = false;
        for (std::uint32_t i = 0; i + 1 < input_size; ++i) {
            if (power > UINT64_MAX / rounded) {
                overflow = true;
                break;
            }
            power *= rounded;
        }
        if (!overflow && power == levels) {
            out.improved = 1268.0 * (K - 1.0) * decay;
        }
    }
    return out;
}

double map_lower_bound(double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw DomainError("map_lower_bound requires beta in (0, 1]");
    }
    if (beta < 0.6) {
        return beta + 0.4 - binary_entropy(0.2);
    }
    return 1.0 - binary_entropy((1.0 - beta) / 2.0);
}

HighSnrBounds high_snr_bounds(double beta) {
    if (!(beta >= 0.6 && beta <= 1.0)) {
        throw DomainError("high_snr_bounds requires beta in [3/5, 1]");
    }
    HighSnrBounds out;
    out.lower = 1.0 - binary_entropy((1.0 - beta) / 2.0);
    out.upper = 1.0 - (2.0 - beta) / 2.0 * binary_entropy((1.0 - beta) / (2.0 - beta));
    return out;
}

SdpiBound sdpi_bound(std::uint32_t n, std::uint32_t levels, double beta) {
    if (levels < 1) {
        throw DomainError("sdpi_bound requires at least one level");
    }
    if (!(beta > 0.0) || !(static_cast<double>(n) > beta)) {
        throw DomainError("sdpi_bound requires 0 < beta < n");
    }
    const double log_m = std::log2(static_cast<double>(levels));
    SdpiBound out;
    const double contraction = 1.0 - 2.0 * inv_binary_entropy(1.0 - beta / n);
    out.sharp = contraction * contraction * log_m;
    out.relaxed = 2.0 * beta * log_m / (static_cast<double>(n) * kLog2E);
    return out;
}

LevelBudgets level_budgets(double eta, double beta, std::uint32_t input_size,
                           std::optional<std::uint32_t> bit_cap) {
    if (!(eta >= 0.0 && eta < 1.0)) {
        throw DomainError("level_budgets requires eta in [0, 1)");
    }
    if (!(beta > 0.0)) {
        throw DomainError("level_budgets requires beta > 0");
    }
    const double c1 = 52.0 / (1.0 - eta);
    LevelBudgets out;
    out.binary = std::floor(c1 * std::max(std::log2(1.0 / beta), 1.0));
    if (input_size >= 3) {
        const double K1 = static_cast<double>(input_size) - 1.0;
        const double root_eta = std::sqrt(eta);
        const double c1r = 52.0 / (1.0 - root_eta);
        out.k_ary = std::floor(std::pow(c1r * std::log2(K1 / ((1.0 - root_eta) * beta)), K1));
        if (bit_cap) {
            if (*bit_cap < 1 || *bit_cap > input_size - 2) {
                throw DomainError("level_budgets bit cap must lie in [1, K-2]");
            }
            const double cap = static_cast<double>(*bit_cap);
            if (!(eta < cap / K1)) {
                throw DomainError("level_budgets bit cap requires eta < bit_cap / (K-1)");
            }
            const double c1c = 52.0 / (1.0 - eta / (cap / K1));
            out.with_bit_cap = std::floor(std::pow(c1c * std::log2(K1 * K1 / beta), cap));
        }
    }
    return out;
}

double hard_family_upper(std::uint32_t levels, double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw DomainError("hard_family_upper requires beta in (0, 1]");
    }
    const double denom = std::log(std::exp(1.0) * kLog2E / (2.0 * beta));
    return 2.0 * static_cast<double>(levels) * beta / denom;
}

double entropy_coding_bound(double eta, double beta) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw DomainError("entropy_coding_bound requires eta in (0, 1)");
    }
    if (!(beta > 0.0) || !(std::log2(1.0 / beta) > 2.0)) {
        throw DomainError("entropy_coding_bound requires log2(1/beta) > 2");
    }
    const double lll = std::log2(std::log2(std::log2(1.0 / beta)));
    return lll - std::log2(1.0 - eta) + std::log2(-std::log2(1.0 - eta)) + 11.0;
}

}  // namespace idq::bounds

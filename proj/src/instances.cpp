#include "idq/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace idq::instances {

namespace {

constexpr double kLog2E = 1.4426950408889634;  // log2(e)

}  // namespace

std::uint64_t Rng::next_u64() {
    // SplitMix64 (Steele, Lea, Flood 2014).
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793238462643 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) {
        throw DomainError("gamma shape must be positive");
    }
    if (shape < 1.0) {
        // Boost: G(a) = G(a+1) * U^{1/a}.
        const double g = gamma(shape + 1.0);
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return g * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::vector<double> Rng::dirichlet(std::size_t n, double concentration) {
    std::vector<double> g(n);
    double sum = 0.0;
    for (double& v : g) {
        v = gamma(concentration);
        sum += v;
    }
    if (sum <= 0.0) {
        // Underflow of every coordinate is only reachable for extreme
        // concentrations; fall back to a point mass on coordinate 0.
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = 1.0;
        return g;
    }
    for (double& v : g) v /= sum;
    return g;
}

JointDistribution bec_instance(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError("bec_instance requires beta in [0, 1]");
    }
    std::vector<std::vector<double>> channel = {
        {beta, 0.0, 1.0 - beta},
        {0.0, beta, 1.0 - beta},
    };
    return JointDistribution(Pmf({0.5, 0.5}), std::move(channel));
}

double bms_beta_formula(double r) {
    if (!(r > 0.0 && r <= 1.0)) {
        throw DomainError("bms_beta_formula requires r in (0, 1]");
    }
    return (kLog2E / 2.0) * r * (1.0 - std::log(r));
}

double bms_r_for_beta(double beta) {
    if (!(beta > 0.0 && beta <= bms_beta_formula(0.25))) {
        throw DomainError("bms_r_for_beta requires beta in (0, formula(0.25)]");
    }
    double lo = 1e-300, hi = 0.25;
    for (int it = 0; it < 2000 && hi - lo > 1e-18 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bms_beta_formula(mid) < beta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

JointDistribution bms_hard_instance(const BmsHardSpec& spec) {
    if (!(spec.r > 0.0 && spec.r <= 0.25)) {
        throw DomainError("bms_hard_instance requires r in (0, 0.25]");
    }
    if (spec.n_bins < 1) {
        throw DomainError("bms_hard_instance requires n_bins >= 1");
    }
    const double r = spec.r;
    const std::uint32_t n = spec.n_bins;
    const double continuous_mass = 1.0 - r;

    // Equal-mass bin edges of the continuous part. The continuous CDF is
    // r/(1-2t)^2 - r, so mass m below t means t = (1 - sqrt(r/(r+m)))/2.
    std::vector<double> edge(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i) {
        const double below = static_cast<double>(i) * continuous_mass / n;
        edge[i] = 0.5 * (1.0 - std::sqrt(r / (r + below)));
    }
    // Partial first moment: integral of t f_T(t) over [0, rho].
    auto partial_moment = [r](double rho) {
        const double d = 1.0 - 2.0 * rho;
        return 2.0 * r * rho * rho / (d * d);
    };

    std::vector<double> mass(n + 1), noise(n + 1);
    mass[0] = r;
    noise[0] = 0.0;  // the atom at t = 0
    for (std::uint32_t b = 1; b <= n; ++b) {
        mass[b] = continuous_mass / n;
        noise[b] = (partial_moment(edge[b]) - partial_moment(edge[b - 1])) / mass[b];
    }

    // Output symbol (v, b) has index v * (n+1) + b.
    const std::size_t out = 2 * (n + 1);
    std::vector<std::vector<double>> channel(2, std::vector<double>(out, 0.0));
    for (std::uint32_t b = 0; b <= n; ++b) {
        const double t = noise[b];
        const double m = mass[b];
        channel[0][b] = m * (1.0 - t);
        channel[0][n + 1 + b] = m * t;
        channel[1][b] = m * t;
        channel[1][n + 1 + b] = m * (1.0 - t);
    }
    return JointDistribution(Pmf({0.5, 0.5}), std::move(channel));
}

JointDistribution map_vs_z_instance(double beta, double delta) {
    if (!(beta >= 0.0 && beta <= 1.0) || !(delta >= 0.0 && delta <= 0.5)) {
        throw DomainError("map_vs_z_instance requires beta in [0,1] and delta in [0,1/2]");
    }
    const double good = beta;
    const double same = (1.0 - beta) * (0.5 + delta);
    const double cross = (1.0 - beta) * (0.5 - delta);
    // Output order: (0,g), (1,g), (0,b), (1,b).
    std::vector<std::vector<double>> channel = {
        {good, 0.0, same, cross},
        {0.0, good, cross, same},
    };
    return JointDistribution(Pmf({0.5, 0.5}), std::move(channel));
}

JointDistribution mod4_instance(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw DomainError("mod4_instance requires delta in [0, 1]");
    }
    const double rest = (1.0 - delta) / 3.0;
    const double pz[4] = {delta, rest, rest, rest};
    std::vector<std::vector<double>> channel(4, std::vector<double>(4));
    for (std::size_t x = 0; x < 4; ++x) {
        for (std::size_t y = 0; y < 4; ++y) {
            channel[x][y] = pz[(y + 4 - x) % 4];
        }
    }
    return JointDistribution(Pmf({0.25, 0.25, 0.25, 0.25}), std::move(channel));
}

double mod4_full_mi(double delta) {
    return 2.0 - binary_entropy(delta) - (1.0 - delta) * std::log2(3.0);
}

double mod4_two_level_mi(double delta) {
    if (delta <= 0.25) {
        return binary_entropy(0.25) - 0.25 * binary_entropy(delta) -
               0.75 * binary_entropy((1.0 - delta) / 3.0);
    }
    return 1.0 - binary_entropy((1.0 + 2.0 * delta) / 3.0);
}

KlPair kl_pair_instance(const KlPairSpec& spec) {
    if (spec.T < 3 || spec.k >= spec.T || spec.k < 1) {
        throw DomainError("kl_pair_instance requires 1 <= k < T and T >= 3");
    }
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) {
        throw DomainError("kl_pair_instance requires alpha in (0, 1]");
    }
    const std::uint32_t T = spec.T;
    // Alphabet {1..T+1} stored at indices 0..T.
    std::vector<double> p(T + 1, 0.0), q(T + 1, 0.0);
    for (std::uint32_t m = 1; m <= T - 1; ++m) p[m - 1] = std::pow(2.0, -static_cast<double>(m));
    p[T - 1] = std::pow(2.0, -static_cast<double>(T - 1));
    p[T] = 0.0;

    auto g = [&](std::uint32_t m) {
        return std::pow(2.0, -spec.alpha * std::pow(2.0, static_cast<double>(m)) /
                                 static_cast<double>(m));
    };
    double tail = 1.0;
    for (std::uint32_t m = 1; m <= T; ++m) {
        q[m - 1] = (m <= spec.k) ? p[m - 1] : g(m) * p[m - 1];
        tail -= q[m - 1];
    }
    if (tail < -kStructuralTol) {
        throw DomainError("kl_pair_instance: residual mass at T+1 is negative");
    }
    q[T] = std::max(tail, 0.0);

    double closed = 2.0 * spec.alpha / T;
    for (std::uint32_t m = spec.k + 1; m <= T - 1; ++m) {
        closed += spec.alpha / static_cast<double>(m);
    }
    return KlPair{Pmf(std::move(p)), Pmf(std::move(q)), closed};
}

double kl_pair_quantized_bound(const KlPairSpec& spec, std::uint32_t levels) {
    return static_cast<double>(levels) *
           (2.0 * std::pow(2.0, -static_cast<double>(spec.k)) + 2.0 * spec.alpha / spec.k);
}

JointDistribution bsc_product_instance(std::uint32_t n, double beta) {
    if (n < 1 || n > 12) {
        throw GuardError("bsc_product_instance requires 1 <= n <= 12");
    }
    if (!(beta > 0.0 && static_cast<double>(n) > beta)) {
        throw DomainError("bsc_product_instance requires 0 < beta < n");
    }
    const double crossover = inv_binary_entropy(1.0 - beta / n);
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::vector<double>> channel(size, std::vector<double>(size));
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
            const int flips = std::popcount(x ^ y);
            channel[x][y] = std::pow(crossover, flips) *
                            std::pow(1.0 - crossover, static_cast<int>(n) - flips);
        }
    }
    // Rows of powers can drift a few ulps from 1; rescale exactly.
    for (auto& row : channel) {
        double sum = 0.0;
        for (double v : row) sum += v;
        for (double& v : row) v /= sum;
    }
    return JointDistribution(Pmf(std::vector<double>(size, 1.0 / static_cast<double>(size))),
                             std::move(channel));
}

JointDistribution dilute_to_beta(const JointDistribution& j, double beta) {
    const double mi = mutual_information(j);
    if (!(beta > 0.0) || beta > mi * (1.0 + 1e-12) + 1e-15) {
        throw DomainError("dilute_to_beta requires 0 < beta <= I(X;Y)");
    }
    const double keep = std::min(beta / mi, 1.0);
    const std::size_t n = j.output_size();
    std::vector<std::vector<double>> channel(j.input_size(), std::vector<double>(n + 1, 0.0));
    for (std::size_t x = 0; x < j.input_size(); ++x) {
        for (std::size_t y = 0; y < n; ++y) channel[x][y] = keep * j.channel(x, y);
        channel[x][n] = 1.0 - keep;
    }
    return JointDistribution(j.px(), std::move(channel));
}

JointDistribution random_instance(std::uint32_t input_size, std::uint32_t output_size,
                                  std::uint64_t seed, double dirichlet_alpha) {
    if (input_size < 2 || output_size < 1) {
        throw DomainError("random_instance requires input_size >= 2 and output_size >= 1");
    }
    if (!(dirichlet_alpha > 0.0)) {
        throw DomainError("random_instance requires a positive Dirichlet concentration");
    }
    Rng rng(seed);
    Pmf px(rng.dirichlet(input_size, dirichlet_alpha));
    std::vector<std::vector<double>> channel(input_size);
    for (auto& row : channel) row = rng.dirichlet(output_size, dirichlet_alpha);
    return JointDistribution(std::move(px), std::move(channel));
}

}  // namespace idq::instances

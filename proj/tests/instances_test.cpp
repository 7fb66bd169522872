#include <doctest.h>

#include <cmath>

#include "idq/core.hpp"
#include "idq/exact.hpp"
#include "idq/instances.hpp"

using namespace idq;
using namespace idq::instances;

namespace {

// Frozen from 30-digit quadrature of 1 - E h(T) over the mixed density.
constexpr double kBmsTrueMi_r025 = 0.533082813;
constexpr double kBmsTrueMi_r001 = 0.0448476600;
constexpr double kR_beta1em4 = 1.11784179e-5;
constexpr double kBmsTrueMi_beta1em4 = 1.04948615e-4;

double discretized_second_moment(const BmsHardSpec& spec) {
    JointDistribution j = bms_hard_instance(spec);
    // Recover (mass, t) per bin from the channel columns: column b of row 0
    // carries mass_b (1 - t_b), column (n+1)+b carries mass_b t_b.
    const std::size_t half = j.output_size() / 2;
    double acc = 0.0;
    for (std::size_t b = 0; b < half; ++b) {
        const double a = j.channel(0, b);
        const double c = j.channel(0, half + b);
        const double mass = a + c;
        if (mass <= 0.0) continue;
        const double t = c / mass;
        acc += mass * (0.5 - t) * (0.5 - t);
    }
    return acc;
}

}  // namespace

TEST_CASE("erasure instance") {
    for (double beta : {0.0, 0.3, 1.0}) {
        JointDistribution j = bec_instance(beta);
        CHECK(j.input_size() == 2);
        CHECK(j.output_size() == 3);
        CHECK(mutual_information(j) == doctest::Approx(beta).epsilon(1e-12));
    }
    CHECK_THROWS_AS(bec_instance(1.5), DomainError);
}

TEST_CASE("hard mixture family: formula, masses, refinement") {
    // The closed form at the generator cap: (log2(e)/2) r (1 - ln r).
    CHECK(bms_beta_formula(1.0) == doctest::Approx(0.72134752044448).epsilon(1e-12));
    CHECK(bms_r_for_beta(1e-3) == doctest::Approx(1.40445525e-4).epsilon(1e-6));
    CHECK(bms_beta_formula(bms_r_for_beta(1e-4)) == doctest::Approx(1e-4).epsilon(1e-10));
    CHECK(bms_r_for_beta(1e-4) == doctest::Approx(kR_beta1em4).epsilon(1e-6));

    JointDistribution tiny = bms_hard_instance({0.25, 1});
    CHECK(tiny.output_size() == 4);

    // The atom keeps exactly mass r; the remaining mass splits evenly.
    JointDistribution j = bms_hard_instance({0.25, 8});
    double atom = j.channel(0, 0) + j.channel(0, 9);
    CHECK(atom == doctest::Approx(0.25).epsilon(1e-12));
    for (std::size_t b = 1; b <= 8; ++b) {
        const double mass = j.channel(0, b) + j.channel(0, 9 + b);
        CHECK(mass == doctest::Approx(0.75 / 8).epsilon(1e-12));
    }

    // Refinement is a reverse quantization: information never drops, and it
    // approaches the quadrature value of the continuous family from below.
    for (double r : {0.25, 0.01}) {
        double prev = 0.0;
        for (std::uint32_t bins : {16u, 64u, 256u, 1024u}) {
            const double mi = mutual_information(bms_hard_instance({r, bins}));
            CHECK(mi >= prev - 1e-12);
            prev = mi;
        }
        const double truth = r == 0.25 ? kBmsTrueMi_r025 : kBmsTrueMi_r001;
        CHECK(prev <= truth + 1e-9);
        CHECK(prev >= truth * 0.98);
    }

    // The family's information proxy is a true lower bound on the measured
    // information (the quadratic entropy estimate underestimates 1 - h), and
    // the exact second-moment identity E (1/2 - T)^2 = (r/4) ln(e/r) is
    // approached from below under conditional-mean binning.
    for (double r : {0.25, 0.01, kR_beta1em4}) {
        const double closed = r / 4.0 * std::log(std::exp(1.0) / r);
        const double disc = discretized_second_moment({r, 4096});
        CHECK(disc <= closed + 1e-12);
        CHECK(disc >= 0.9 * closed);
        const double mi = mutual_information(bms_hard_instance({r, 4096}));
        CHECK(mi >= 2.0 * std::log2(std::exp(1.0)) * disc - 1e-12);
    }
    const double mi4096 = mutual_information(bms_hard_instance({kR_beta1em4, 4096}));
    CHECK(mi4096 <= kBmsTrueMi_beta1em4 + 1e-9);

    CHECK_THROWS_AS(bms_hard_instance({0.3, 16}), DomainError);
    CHECK_THROWS_AS(bms_hard_instance({0.1, 0}), DomainError);
}

TEST_CASE("good/bad split instance") {
    // At delta = 0 both bad symbols carry the uniform posterior.
    JointDistribution j0 = map_vs_z_instance(0.3, 0.0);
    Posterior post = posterior_decomposition(j0);
    CHECK((*post.alpha[2])[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK((*post.alpha[3])[1] == doctest::Approx(0.5).epsilon(1e-12));

    // Merging the bad symbols reproduces the erasure structure: the merged
    // channel has the same optimal one-bit value as the erasure instance.
    Quantizer merge_bad(std::vector<std::uint32_t>{0, 1, 2, 2}, 3);
    JointDistribution merged = apply_quantizer(j0, merge_bad);
    CHECK(mutual_information(merged) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(exact::optimal_binary_quantizer(merged, 2).value ==
          doctest::Approx(exact::optimal_binary_quantizer(bec_instance(0.3), 2).value)
              .epsilon(1e-12));
}

TEST_CASE("mod-4 instance formulas") {
    CHECK(mutual_information(mod4_instance(1.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mutual_information(mod4_instance(0.25)) == doctest::Approx(0.0).epsilon(1e-12));
    for (int i = 0; i <= 10; ++i) {
        const double delta = i / 10.0;
        JointDistribution j = mod4_instance(delta);
        CHECK(mutual_information(j) == doctest::Approx(mod4_full_mi(delta)).epsilon(1e-11));
        CHECK(exact::brute_force_quantizer(j, 2).value ==
              doctest::Approx(mod4_two_level_mi(delta)).epsilon(1e-9));
    }
}

TEST_CASE("dyadic divergence pair") {
    KlPairSpec spec{3, 10, 0.5};
    KlPair pair = kl_pair_instance(spec);
    CHECK(pair.p.size() == 11);
    CHECK(kl_divergence(pair.p, pair.q) ==
          doctest::Approx(pair.closed_form_divergence).epsilon(1e-12));
    // alpha -> 0 sends q -> p above the threshold and the divergence to 0.
    KlPair faint = kl_pair_instance({3, 10, 1e-9});
    CHECK(faint.closed_form_divergence < 2e-9);
    CHECK(kl_divergence(faint.p, faint.q) < 2e-9);
    CHECK_THROWS_AS(kl_pair_instance({5, 4, 0.5}), DomainError);
}

TEST_CASE("product channel hits its information target") {
    JointDistribution one = bsc_product_instance(1, 1.0 - 1e-9);
    CHECK(mutual_information(one) == doctest::Approx(1.0).epsilon(1e-6));
    JointDistribution four = bsc_product_instance(4, 0.5);
    CHECK(four.input_size() == 16);
    CHECK(four.output_size() == 16);
    CHECK(mutual_information(four) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(bsc_product_instance(13, 0.5), GuardError);
    CHECK_THROWS_AS(bsc_product_instance(2, 3.0), DomainError);
}

TEST_CASE("dilution") {
    JointDistribution j = random_instance(2, 6, 42, 1.0);
    const double mi = mutual_information(j);
    JointDistribution same = dilute_to_beta(j, mi);
    CHECK(same.output_size() == 7);
    CHECK(mutual_information(same) == doctest::Approx(mi).epsilon(1e-12));

    JointDistribution half = dilute_to_beta(j, mi / 2.0);
    CHECK(mutual_information(half) == doctest::Approx(mi / 2.0).epsilon(1e-10));

    // Data processing: diluting can only lower the quantized optimum.
    CHECK(exact::optimal_binary_quantizer(half, 2).value <=
          exact::optimal_binary_quantizer(j, 2).value + 1e-9);

    CHECK_THROWS_AS(dilute_to_beta(j, mi * 1.5), DomainError);
}

TEST_CASE("random instances are seed-deterministic") {
    JointDistribution a = random_instance(2, 8, 7, 1.0);
    JointDistribution b = random_instance(2, 8, 7, 1.0);
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 8; ++y) {
            CHECK(a.channel(x, y) == b.channel(x, y));
        }
    }
    JointDistribution c = random_instance(2, 8, 8, 1.0);
    bool differs = false;
    for (std::size_t y = 0; y < 8; ++y) differs = differs || a.channel(0, y) != c.channel(0, y);
    CHECK(differs);

    // Large concentration pushes rows toward uniform.
    JointDistribution flat = random_instance(2, 16, 3, 5000.0);
    for (std::size_t y = 0; y < 16; ++y) {
        CHECK(flat.channel(0, y) == doctest::Approx(1.0 / 16).epsilon(0.25));
    }
}

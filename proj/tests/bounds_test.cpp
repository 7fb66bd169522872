#include <doctest.h>

#include <cmath>

#include "idq/bounds.hpp"
#include "idq/core.hpp"

using namespace idq;
using namespace idq::bounds;

namespace {

// Frozen from 40-digit evaluations of the defining formulas.
constexpr double kNu2 = 1267.0693741524936;
constexpr double kNu3 = 4058.8986820659152;
constexpr double kHinv075 = 0.21450174485982875;
constexpr double kSharpSdpi = 0.32603701475232928;  // (1 - 2 h^{-1}(3/4))^2
constexpr double kA1Case = 0.46888896085987857;     // route 1 at K=3, beta=1e-3, M=1e4
constexpr double kMapAt35 = 0.27807190511263765;    // both branches at beta = 3/5
constexpr double kHighSnrUpper06 = 0.3958156020033583;

}  // namespace

TEST_CASE("distillation fraction functions") {
    CHECK(distill_fraction_lower(0.0) == 0.0);
    CHECK(distill_fraction_lower(104.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(distill_fraction_lower(208.0) == doctest::Approx(0.75).epsilon(1e-15));
    // Continuity at the branch point and monotonicity.
    CHECK(distill_fraction_lower(104.0 - 1e-9) ==
          doctest::Approx(distill_fraction_lower(104.0 + 1e-9)).epsilon(1e-9));
    double prev = -1.0;
    for (double t = 0.0; t <= 500.0; t += 2.5) {
        const double v = distill_fraction_lower(t);
        CHECK(v >= prev);
        CHECK(v < 1.0);
        prev = v;
    }
    CHECK(distill_fraction_upper(0.0) == 0.0);
    CHECK(distill_fraction_upper(0.1) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(distill_fraction_upper(0.5) == 1.0);
    CHECK_THROWS_AS(distill_fraction_lower(-1.0), DomainError);
}

TEST_CASE("binary distillation sandwich") {
    BoundReport r = id2_bounds(105, 1.0);
    CHECK(r.find("distill_lower")->value == doctest::Approx(0.5).epsilon(1e-12));
    BoundReport one = id2_bounds(1, 0.3);
    CHECK(one.find("distill_lower")->value == doctest::Approx(0.0).epsilon(1e-15));

    const double beta = std::pow(2.0, -10);
    BoundReport fine = id2_bounds(11, beta);
    CHECK(fine.find("distill_lower")->value == doctest::Approx(beta / 208.0).epsilon(1e-12));
    CHECK(fine.find("distill_upper")->value == doctest::Approx(beta).epsilon(1e-12));

    for (std::uint32_t m : {1u, 2u, 7u, 300u}) {
        for (double b : {1e-4, 1e-2, 0.5, 1.0}) {
            BoundReport rep = id2_bounds(m, b);
            const double lo = rep.find("distill_lower")->value;
            const double hi = rep.find("distill_upper")->value;
            CHECK(lo <= hi + 1e-9);
            CHECK(lo >= 0.0);
            CHECK(hi <= b + 1e-15);
        }
    }
}

TEST_CASE("k-ary distillation lower bound") {
    IdkLowerResult tiny = idk_lower(1, 4, 0.1);
    CHECK(tiny.value == doctest::Approx(0.0).epsilon(1e-15));

    IdkLowerResult r = idk_lower(10000, 3, 1e-3);
    CHECK(r.a[1] == doctest::Approx(kA1Case).epsilon(1e-12));
    CHECK(r.value >= 1e-3 * kA1Case - 1e-15);

    // Dominated by the binary-style upper fraction.
    for (double beta : {1e-3, 1e-2, 0.2}) {
        for (std::uint32_t m : {2u, 64u, 4096u}) {
            IdkLowerResult v = idk_lower(m, 4, beta);
            const double t = (m - 1.0) / std::max(std::log2(1.0 / beta), 1.0);
            CHECK(v.value <= beta * distill_fraction_upper(t) + 1e-9);
        }
    }
    CHECK_THROWS_AS(idk_lower(4, 2, 0.1), DomainError);
    CHECK_THROWS_AS(idk_lower(4, 3, 2.0), DomainError);
}

TEST_CASE("additive gap constant") {
    const double nu2 = additive_gap_constant(2);
    CHECK(nu2 == doctest::Approx(kNu2).epsilon(1e-12));
    CHECK(nu2 > 1000.0);
    CHECK(nu2 <= 1268.0);
    CHECK(additive_gap_constant(3) == doctest::Approx(kNu3).epsilon(1e-12));
    // Cubic growth regime for larger alphabets.
    const double ratio = additive_gap_constant(50) / (50.0 * 50.0 * 50.0);
    const double scale = 16.0 * 3.14159265358979 * std::exp(1.0);
    CHECK(ratio < 4.0 * scale);
    CHECK(ratio > scale / 4.0);
}

TEST_CASE("degrading cost bounds") {
    DegradingCostBounds b24 = degrading_cost_bounds(2, 4);
    CHECK(b24.kt_bound == doctest::Approx(kNu2 / 16.0).epsilon(1e-12));
    REQUIRE(b24.improved.has_value());
    CHECK(*b24.improved == doctest::Approx(1268.0 / 16.0).epsilon(1e-12));

    DegradingCostBounds b316 = degrading_cost_bounds(3, 16);
    REQUIRE(b316.improved.has_value());
    CHECK(*b316.improved == doctest::Approx(2536.0 / 16.0).epsilon(1e-12));

    // Root not an integer or too small: no refined constant.
    CHECK_FALSE(degrading_cost_bounds(3, 15).improved.has_value());
    CHECK_FALSE(degrading_cost_bounds(2, 3).improved.has_value());

    // Both shrink to zero with the level count.
    CHECK(degrading_cost_bounds(2, 1 << 16).kt_bound < 1e-6);
}

TEST_CASE("threshold-rule lower bound") {
    CHECK(map_lower_bound(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(map_lower_bound(0.6 - 1e-12) == doctest::Approx(kMapAt35).epsilon(1e-9));
    CHECK(map_lower_bound(0.6) == doctest::Approx(kMapAt35).epsilon(1e-12));
    CHECK(map_lower_bound(0.8) ==
          doctest::Approx(1.0 - binary_entropy(0.1)).epsilon(1e-12));
}

TEST_CASE("high-information regime bounds") {
    HighSnrBounds at_one = high_snr_bounds(1.0);
    CHECK(at_one.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at_one.upper == doctest::Approx(1.0).epsilon(1e-12));

    HighSnrBounds at06 = high_snr_bounds(0.6);
    CHECK(at06.lower == doctest::Approx(kMapAt35).epsilon(1e-12));
    CHECK(at06.upper == doctest::Approx(kHighSnrUpper06).epsilon(1e-12));

    for (int i = 0; i <= 40; ++i) {
        const double beta = 0.6 + 0.4 * i / 40.0;
        HighSnrBounds b = high_snr_bounds(beta);
        CHECK(b.lower <= b.upper + 1e-12);
    }
    CHECK_THROWS_AS(high_snr_bounds(0.5), DomainError);
}

TEST_CASE("product-channel contraction bound") {
    SdpiBound one = sdpi_bound(4, 1, 1.0);
    CHECK(one.sharp == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(one.relaxed == doctest::Approx(0.0).epsilon(1e-15));

    SdpiBound b = sdpi_bound(4, 2, 1.0);
    CHECK(b.sharp == doctest::Approx(kSharpSdpi).epsilon(1e-9));
    CHECK(b.sharp <= b.relaxed + 1e-12);

    // Vanishes as the product length grows.
    CHECK(sdpi_bound(1 << 20, 2, 1.0).sharp < 1e-5);
    CHECK(sdpi_bound(1 << 20, 2, 1.0).relaxed < 1e-5);

    for (std::uint32_t n : {2u, 4u, 16u}) {
        for (double beta : {0.25, 1.0, 1.5}) {
            if (beta >= n) continue;
            for (std::uint32_t m : {2u, 8u}) {
                SdpiBound s = sdpi_bound(n, m, beta);
                CHECK(s.sharp <= s.relaxed + 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(sdpi_bound(2, 4, 3.0), DomainError);
}

TEST_CASE("level budgets") {
    LevelBudgets b = level_budgets(0.5, std::pow(2.0, -10), 2);
    CHECK(b.binary == doctest::Approx(1040.0).epsilon(1e-15));
    CHECK_FALSE(b.k_ary.has_value());

    CHECK(level_budgets(0.0, 1e-3, 2).binary ==
          doctest::Approx(std::floor(52.0 * std::log2(1000.0))).epsilon(1e-15));
    CHECK(level_budgets(0.5, 0.5, 2).binary == doctest::Approx(104.0).epsilon(1e-15));

    LevelBudgets k = level_budgets(0.2, 1e-3, 3, 1u);
    REQUIRE(k.k_ary.has_value());
    REQUIRE(k.with_bit_cap.has_value());
    CHECK(*k.with_bit_cap == doctest::Approx(1037.0).epsilon(1e-12));

    // Monotone in the retention target and in 1/beta.
    CHECK(level_budgets(0.6, 1e-3, 2).binary >= level_budgets(0.5, 1e-3, 2).binary);
    CHECK(level_budgets(0.5, 1e-6, 2).binary >= level_budgets(0.5, 1e-3, 2).binary);

    CHECK_THROWS_AS(level_budgets(0.5, 1e-3, 4, 3u), DomainError);   // cap beyond K-2
    CHECK_THROWS_AS(level_budgets(0.6, 1e-3, 3, 1u), DomainError);   // eta >= cap/(K-1)
}

TEST_CASE("hard family cap") {
    // At beta = log2(e)/2 the log factor is exactly 1 and the cap is 2 M beta.
    const double special = std::log2(std::exp(1.0)) / 2.0;
    CHECK(hard_family_upper(3, special) == doctest::Approx(6.0 * special).epsilon(1e-12));

    const double cap = hard_family_upper(2, 1e-4);
    CHECK(cap == doctest::Approx(4e-4 / std::log(std::exp(1.0) * std::log2(std::exp(1.0)) /
                                                 2e-4)).epsilon(1e-12));
    // Base-2 rewriting of the cap: (2/ln 2) M beta / (log2(1/beta) + log2(e log2(e)/2)).
    for (double beta : {1e-6, 1e-3, 0.3}) {
        for (std::uint32_t m : {2u, 16u}) {
            const double rewritten =
                (2.0 / std::log(2.0)) * m * beta /
                (std::log2(1.0 / beta) + std::log2(std::exp(1.0) * std::log2(std::exp(1.0)) / 2.0));
            CHECK(hard_family_upper(m, beta) == doctest::Approx(rewritten).epsilon(1e-12));
        }
    }
}

TEST_CASE("entropy coding bound") {
    const double beta = std::pow(2.0, -256);
    CHECK(entropy_coding_bound(0.5, beta) == doctest::Approx(15.0).epsilon(1e-12));
    // eta = 1/2 specializes to the iterated log plus 12.
    for (double b : {1e-3, 1e-6}) {
        CHECK(entropy_coding_bound(0.5, b) ==
              doctest::Approx(std::log2(std::log2(std::log2(1.0 / b))) + 12.0).epsilon(1e-12));
    }
    // Grows without bound as the retention target approaches 1.
    CHECK(entropy_coding_bound(0.99, 1e-3) > entropy_coding_bound(0.9, 1e-3));
    CHECK(entropy_coding_bound(0.9, 1e-3) > entropy_coding_bound(0.5, 1e-3));
    CHECK_THROWS_AS(entropy_coding_bound(0.5, 0.3), DomainError);
}

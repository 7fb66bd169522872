#pragma once

// Generators for the distribution families used as examples, extremal
// constructions and counterexamples, plus a seeded random-instance generator
// for test corpora.

#include <cstdint>
#include <vector>

#include "idq/core.hpp"

namespace idq::instances {

/// Deterministic random stream with a pinned algorithm so fixtures reproduce
/// across platforms: SplitMix64 words -> uniform doubles via
/// (x >> 11) * 2^-53, normals by Box-Muller, gamma variates by
/// Marsaglia-Tsang (with the shape+1 boost for shape < 1). No standard-library
/// distribution objects are involved, so there is no implementation variance.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double normal();
    double gamma(double shape);
    std::vector<double> dirichlet(std::size_t n, double concentration);

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Binary erasure channel with uniform input and I(X;Y) = beta.
/// Output order: {0, 1, erased}.
JointDistribution bec_instance(double beta);

/// Hard binary-input output-symmetric family: Y = (X xor Z_T, T) where
/// Pr(Z_T = 1 | T = t) = t and T mixes an atom of mass r at t = 0 with the
/// density 4r/(1-2t)^3 on (0, (1-sqrt(r))/2].
struct BmsHardSpec {
    double r = 0.0;           // in (0, 0.25]
    std::uint32_t n_bins = 1;  // discretization cells for the continuous part
};

/// Closed-form mutual-information proxy (log2(e)/2) * r * ln(e/r) attached to
/// the hard family; the bound evaluators take it as their beta argument. The
/// measured mutual information of the instance lies slightly above it.
double bms_beta_formula(double r);

/// Inverse of bms_beta_formula on (0, 0.25], by bisection.
double bms_r_for_beta(double beta);

/// Discretizes T by the atom plus n_bins equal-mass cells of the continuous
/// part, each represented by its conditional mean. The representation is
/// mass-exact, so the instance is a true quantization of the continuous one:
/// refining n_bins never decreases mutual information.
JointDistribution bms_hard_instance(const BmsHardSpec& spec);

/// Four-symbol channel separating "good" outputs (probability beta, identify
/// X) from "bad" ones (posterior 1/2 +- delta). Output order:
/// {(0,g), (1,g), (0,b), (1,b)}; uniform input.
JointDistribution map_vs_z_instance(double beta, double delta);

/// X uniform on {0,1,2,3}, Y = X + Z mod 4 with Pr(Z=0) = delta and the
/// other three noise values equiprobable.
JointDistribution mod4_instance(double delta);

/// Closed form I(X;Y) = 2 - h(delta) - (1-delta) log2(3) for mod4_instance.
double mod4_full_mi(double delta);

/// Closed form for the optimal 2-level value of mod4_instance; the branch
/// switches at delta = 1/4 between isolating one symbol and splitting 2/2.
double mod4_two_level_mi(double delta);

/// Pair of distributions on {1..T+1} whose divergence survives quantization
/// badly: P is dyadic, Q scales P by g(m) = 2^(-alpha 2^m / m) above index k.
struct KlPairSpec {
    std::uint32_t k = 1;
    std::uint32_t T = 4;
    double alpha = 1.0;  // in (0, 1]
};

struct KlPair {
    Pmf p;
    Pmf q;
    double closed_form_divergence = 0.0;  // alpha (2/T + sum_{m=k+1}^{T-1} 1/m)
};

KlPair kl_pair_instance(const KlPairSpec& spec);

/// Per-level quantized-divergence cap M (2 * 2^-k + 2 alpha / k) for the pair.
double kl_pair_quantized_bound(const KlPairSpec& spec, std::uint32_t levels);

/// n-fold product of a binary symmetric channel with crossover chosen so the
/// total mutual information is exactly beta. Alphabets have size 2^n.
JointDistribution bsc_product_instance(std::uint32_t n, double beta);

/// Concatenates an erasure channel that keeps Y with probability
/// beta / I(X;Y), adding one extra output symbol, so the result has mutual
/// information exactly beta.
JointDistribution dilute_to_beta(const JointDistribution& j, double beta);

/// Input pmf and channel rows drawn from symmetric Dirichlet distributions.
/// Deterministic in the seed.
JointDistribution random_instance(std::uint32_t input_size, std::uint32_t output_size,
                                  std::uint64_t seed, double dirichlet_alpha);

}  // namespace idq::instances

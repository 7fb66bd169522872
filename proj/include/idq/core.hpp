#pragma once

// Finite-probability data model and information measures.
//
// Everything downstream (solvers, constructions, bounds, generators) consumes
// the three value types defined here: a probability mass function, a joint
// input/channel pair, and a deterministic labeling of the output alphabet.
// All information quantities are in bits.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace idq {

// Tolerance ledger. Structural sums are checked at 1e-10, pmf normalization
// at 1e-12, mutual-information comparisons in tests at 1e-9 unless a contract
// states otherwise.
inline constexpr double kPmfSumTol = 1e-12;
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kMiTol = 1e-9;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside its mathematical domain or a violated precondition.
struct DomainError : Error {
    using Error::Error;
};

/// p is not absolutely continuous w.r.t. q (p[i] > 0 while q[i] == 0).
struct AbsoluteContinuityError : Error {
    using Error::Error;
};

/// A size guard on an exhaustive routine was exceeded.
struct GuardError : Error {
    using Error::Error;
};

/// File or JSON input could not be parsed into a valid object.
struct ParseError : Error {
    using Error::Error;
};

/// Probability mass function over a finite alphabet.
///
/// Invariants enforced on construction: at least one symbol, every entry
/// nonnegative, entries sum to 1 within 1e-12. Zero entries are permitted.
class Pmf {
  public:
    explicit Pmf(std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

  private:
    std::vector<double> probs_;
};

/// Deterministic labeling f: Y -> {0, ..., num_levels-1}.
///
/// Not every level has to be occupied; a quantizer may use fewer cells than
/// its nominal level count.
struct Quantizer {
    std::vector<std::uint32_t> labels;
    std::uint32_t num_levels = 0;

    Quantizer() = default;
    Quantizer(std::vector<std::uint32_t> labels_, std::uint32_t num_levels_);

    std::size_t domain_size() const { return labels.size(); }
};

/// Composition second(first(y)). `first` maps N symbols onto `first.num_levels`
/// cells, `second` must be defined on exactly that many symbols.
Quantizer compose(const Quantizer& first, const Quantizer& second);

Quantizer identity_quantizer(std::size_t n);

/// Joint distribution of (X, Y) given as an input pmf and a channel matrix.
///
/// channel(x, y) = P(Y=y | X=x); each row is itself a valid pmf. The induced
/// joint is p(x, y) = px[x] * channel(x, y).
class JointDistribution {
  public:
    JointDistribution(Pmf px, std::vector<std::vector<double>> channel);

    std::size_t input_size() const { return px_.size(); }   // K
    std::size_t output_size() const { return cols_; }       // N

    const Pmf& px() const { return px_; }
    double channel(std::size_t x, std::size_t y) const { return channel_[x * cols_ + y]; }
    double joint(std::size_t x, std::size_t y) const { return px_[x] * channel(x, y); }

    /// Marginal of Y. Entries may be zero; they are renormalization-free sums
    /// of joint mass, so the result is a valid pmf.
    Pmf output_marginal() const;

    /// Row x of the channel matrix as a vector.
    std::vector<double> channel_row(std::size_t x) const;

  private:
    Pmf px_;
    std::vector<double> channel_;  // row-major K x N
    std::size_t cols_;
};

/// Posterior decomposition of a joint: alpha[y] = P(X=. | Y=y) wherever the
/// output symbol has positive probability, together with the Y marginal.
/// Symbols with P_Y(y) = 0 carry no posterior (std::nullopt).
struct Posterior {
    std::vector<std::optional<Pmf>> alpha;
    Pmf py;
};

Posterior posterior_decomposition(const JointDistribution& j);

/// x * log2(x) with the 0 log 0 = 0 convention.
double xlog2(double x);

/// Shannon entropy of a pmf, in bits.
double entropy(const Pmf& p);

/// Binary entropy h(t) = -t log2 t - (1-t) log2 (1-t) on [0, 1].
double binary_entropy(double t);

/// Inverse of h restricted to [0, 1/2], by bisection to interval width 1e-14.
/// Monotone nondecreasing; h(inv_binary_entropy(t)) = t within 1e-12.
double inv_binary_entropy(double t);

/// Kullback-Leibler divergence D(p || q) in bits. Requires p absolutely
/// continuous w.r.t. q; a violation raises AbsoluteContinuityError.
double kl_divergence(const Pmf& p, const Pmf& q);

/// Mutual information I(X;Y) in bits, computed as the output-weighted
/// divergence of posteriors from the input pmf.
double mutual_information(const JointDistribution& j);

/// The joint of (X, f(Y)): output columns merged by label, input preserved.
JointDistribution apply_quantizer(const JointDistribution& j, const Quantizer& q);

/// I(X; f(Y)).
double quantized_mi(const JointDistribution& j, const Quantizer& q);

/// Minimal expected log-loss of reconstructing X from f(Y), which equals the
/// conditional entropy H(X | f(Y)). Computed directly from the quantized
/// joint, so entropy(px) - quantized_mi(j, q) is an independent identity.
double log_loss_distortion(const JointDistribution& j, const Quantizer& q);

}  // namespace idq

#pragma once

// File formats: versioned JSON channel files, divergence-pair files, and the
// canonical instance digest used by run reports.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "idq/core.hpp"
#include "idq/instances.hpp"

namespace idq::io {

inline constexpr int kChannelFileVersion = 1;

struct ChannelFile {
    JointDistribution joint;
    std::optional<std::vector<std::string>> x_labels;
    std::optional<std::vector<std::string>> y_labels;
};

/// Parses a channel file. Structural problems raise ParseError with the
/// offending field spelled out; numeric validity is enforced by the
/// JointDistribution constructor.
ChannelFile read_channel_file(const std::filesystem::path& path);

void write_channel_file(const std::filesystem::path& path, const JointDistribution& joint,
                        const std::optional<std::vector<std::string>>& x_labels = {},
                        const std::optional<std::vector<std::string>>& y_labels = {});

struct KlPairFile {
    Pmf p;
    Pmf q;
    std::optional<double> closed_form_divergence;
};

KlPairFile read_kl_pair_file(const std::filesystem::path& path);

void write_kl_pair_file(const std::filesystem::path& path, const instances::KlPair& pair);

/// FNV-1a 64-bit hash over the little-endian bytes of the input pmf and
/// channel matrix (sizes included), rendered as "fnv1a64:<hex>". Stable for a
/// fixed build on IEEE-754 doubles.
std::string instance_digest(const JointDistribution& joint);

std::string pmf_pair_digest(const Pmf& p, const Pmf& q);

}  // namespace idq::io

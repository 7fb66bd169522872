#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace idq::bounds {

enum class BoundKind { lower, upper };

struct BoundEntry {
    std::string name;
    BoundKind kind = BoundKind::lower;
    double value = 0.0;
    std::string note;  // validity remark, e.g. the domain the entry holds on
};

/// A consolidated set of bound values for one (beta, K, M) triple. Every
/// lower entry is at most every upper entry whenever both bound the same
/// distillation value.
struct BoundReport {
    double beta = 0.0;
    std::uint32_t input_size = 0;
    std::uint32_t levels = 0;
    std::vector<BoundEntry> entries;

    const BoundEntry* find(const std::string& name) const {
        for (const auto& e : entries) {
            if (e.name == name) return &e;
        }
        return nullptr;
    }
};

}  // namespace idq::bounds

#pragma once

#include <cstdint>
#include <string>

namespace cam {

/// Line-oriented source range. Lines are 1-based and inclusive.
struct Span {
    std::string file;
    int start_line = 0;
    int end_line = 0;

    bool contains(const Span& other) const {
        return file == other.file && start_line <= other.start_line &&
               other.end_line <= end_line;
    }

    friend bool operator==(const Span&, const Span&) = default;
};

using NodeId = std::int32_t;
inline constexpr NodeId k_no_node = -1;

} // namespace cam

#pragma once

#include <cstddef>
#include <string_view>

namespace xray {

/// Half-open byte range [begin, end) into a source buffer.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool contains(const Span& other) const {
        return begin <= other.begin && other.end <= end;
    }
    bool operator==(const Span&) const = default;
};

/// 1-based line/column position, for diagnostics.
struct LineCol {
    std::size_t line = 1;
    std::size_t col = 1;
};

LineCol line_col_at(std::string_view text, std::size_t offset);

}  // namespace xray

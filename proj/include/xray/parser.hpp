#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "xray/model.hpp"
#include "xray/token.hpp"

namespace xray {

/// Parses a token stream into a SourceUnit. Class and member declarations are
/// parsed strictly; statements inside method bodies that do not fit the
/// accepted grammar degrade to a single LocalOp event as long as they
/// reference no field or callable member of the class hierarchy.
SourceUnit parse_unit(std::string_view path, std::string_view text,
                      const std::vector<Token>& tokens);

/// tokenize + parse_unit in one step.
SourceUnit parse_source(std::string_view path, std::string_view text);

/// Parses several (path, text) units as one resolution universe: inherited
/// members declared in any unit stay visible while classifying the body
/// events of every other.
std::vector<SourceUnit> parse_sources(
    const std::vector<std::pair<std::string, std::string>>& named_sources);

}  // namespace xray

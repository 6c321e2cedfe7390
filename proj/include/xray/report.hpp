#pragma once

#include <set>
#include <string>
#include <string_view>

#include "xray/views.hpp"

namespace xray {

inline constexpr std::string_view kToolName = "xray";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Deterministic JSON document with top-level keys {class, concepts,
/// dependencies, entities, meta, relations, views}; keys and arrays sorted,
/// byte-stable across runs.
std::string emit_json(const XRayReport& report);

/// Concept lattice as a DOT digraph: one node per concept labelled
/// "extent\nintent" (or reduced labels), one edge per cover pair, ranks by
/// extent size so the top concept renders topmost.
std::string emit_dot(const XRayReport& report, bool reduced_labels = false);

/// Human-readable report. `sections` filters what is printed: any of
/// "state", "clusters", "skeleton", "deps", "concepts" (empty set = all).
std::string emit_text(const XRayReport& report, const std::set<std::string>& sections = {},
                      bool color = false);

}  // namespace xray

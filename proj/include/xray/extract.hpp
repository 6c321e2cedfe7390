#pragma once

#include <map>
#include <string>

#include "xray/fca.hpp"
#include "xray/hierarchy.hpp"
#include "xray/model.hpp"
#include "xray/relations.hpp"

namespace xray {

enum class AccessorMode { Get, Set };

struct AccessorInfo {
    std::string field;  // simple field name within the declaring class
    AccessorMode mode = AccessorMode::Get;

    bool operator==(const AccessorInfo&) const = default;
};

/// Maps a method signature to the field it trivially reads or writes. A
/// getter body is exactly one returned FieldRead with no parameters; a setter
/// body is exactly one FieldWrite fed from the single parameter.
std::map<std::string, AccessorInfo> detect_accessors(const ClassModel& model);

/// Flattens the focus class over its hierarchy and derives the uses/calls
/// relations, applying accessor resolution, override merging, try-catch
/// synthesis and the constructor-dependency rule.
RelationSet extract_relations(const Hierarchy& hierarchy, const std::string& focus);
RelationSet extract_relations(const SourceUnit& unit, const Hierarchy& hierarchy,
                              const std::string& focus);

/// Replaces every override group with a single MergedMethod whose images are
/// the union of the members' images. No override pairs means identity.
RelationSet merge_overrides(const RelationSet& relations, const Hierarchy& hierarchy);

/// Incidence table over the relation set. Uses-mode: method-like objects x
/// attribute properties. Calls-mode: method-like on both sides. Combined:
/// properties are attributes plus method-like entities. Orderings are
/// lexicographic by entity id.
fca::FormalContext build_context(const RelationSet& relations, RelationKind mode);

}  // namespace xray

#pragma once

#include <string>
#include <vector>

#include "xray/classify.hpp"
#include "xray/extract.hpp"
#include "xray/fca.hpp"
#include "xray/relations.hpp"

namespace xray {

struct Group {
    std::string label;  // unique within a view
    std::string role;
    std::vector<std::string> members;

    bool operator==(const Group&) const = default;
};

struct XRayView {
    std::string name;  // StateUsage, MethodClusters or BehaviourSkeleton
    std::vector<Group> groups;
    std::vector<std::string> notes;

    const Group* find_group(const std::string& label) const;

    bool operator==(const XRayView&) const = default;
};

/// How the instance variables work together: per-attribute user sets,
/// collaborating attribute groups (proper intents of the uses lattice),
/// stateless methods, dead attributes, and methods touching the whole state.
XRayView state_usage(const RelationSet& relations, const fca::Lattice& uses_lattice);

/// Method clusters: proper concept extents of the combined context, labelled
/// by their intents.
XRayView method_clusters(const RelationSet& relations);

/// Call-structure roles (interfaces, entry points, internal and isolated
/// methods) plus the class core: methods whose direct or transitive state
/// coverage reaches `core_coverage` of the attributes.
XRayView behaviour_skeleton(const RelationSet& relations, double core_coverage = 1.0);

struct XRayReport {
    std::string class_name;
    RelationSet relations;
    RelationKind context_mode = RelationKind::Uses;
    fca::FormalContext context;
    fca::Lattice lattice;
    std::vector<DependencyEdge> dependencies;
    std::vector<XRayView> views;

    std::size_t proper_concept_count() const;
};

/// Assembles the report and validates that every id referenced by the
/// context, edges and views names an entity of the relation set; raises
/// InconsistentInputs otherwise.
XRayReport compose_report(std::string class_name, RelationSet relations, RelationKind mode,
                          fca::FormalContext context, fca::Lattice lattice,
                          std::vector<DependencyEdge> dependencies,
                          std::vector<XRayView> views);

}  // namespace xray

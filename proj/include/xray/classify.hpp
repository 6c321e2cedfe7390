#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xray/relations.hpp"

namespace xray {

/// The five dependency forms plus the reported non-case: the target set
/// overlaps the image but fits none of the five definitions.
enum class DependencyKind {
    ExclusiveDirect,
    SharedDirect,
    ExclusiveTransitive,
    SharedTransitive,
    None,
    NotComparable,
};

std::string_view to_string(DependencyKind kind);

/// Which relation an image is taken over, and in which direction. Inverse
/// selectors walk the pairs target-to-source (attribute -> using methods).
struct RelationSelector {
    RelationKind relation = RelationKind::Uses;
    bool inverse = false;

    bool operator==(const RelationSelector&) const = default;
    auto operator<=>(const RelationSelector&) const = default;
};

std::string to_string(RelationSelector selector);

/// One witnessed transitive path: `source` relates to `via`, which relates to
/// `target` through the composed step.
struct Witness {
    std::string source;
    std::string via;
    std::string target;

    bool operator==(const Witness&) const = default;
    auto operator<=>(const Witness&) const = default;
};

struct DependencyEdge {
    std::vector<std::string> sources;
    std::vector<std::string> targets;
    RelationSelector selector;
    DependencyKind kind = DependencyKind::None;
    std::vector<Witness> witnesses;  // transitive kinds only
    bool aggregate = false;          // built by merging several entities

    bool operator==(const DependencyEdge&) const = default;
};

/// Union of the direct relation targets over the source entities. Every id
/// must name an entity of the relation set (UnknownId otherwise).
std::set<std::string> image(const RelationSet& relations, RelationSelector selector,
                            const std::set<std::string>& sources);

struct TransitiveImage {
    std::set<std::string> targets;
    std::vector<Witness> witnesses;
};

/// Targets reachable through one or more call steps composed with a final
/// selector step (mirrored for inverse selectors). Direct targets of the
/// sources are excluded: they belong to image(), and keeping the two sets
/// disjoint is what makes the five dependency kinds mutually exclusive.
TransitiveImage transitive_image(const RelationSet& relations, RelationSelector selector,
                                 const std::set<std::string>& sources);

/// Classifies the dependency of `sources` on `targets`. Both sets must be
/// nonempty and disjoint. Transitive kinds carry the witnessing paths into
/// the target set.
DependencyEdge classify(const RelationSet& relations, RelationSelector selector,
                        const std::set<std::string>& sources,
                        const std::set<std::string>& targets);

/// Edge catalogue for a relation set: per-entity edges onto their full
/// (direct plus transitive) images, entities with identical images merged
/// into one aggregated edge, plus a whole-class aggregate per direction when
/// the per-group images are pairwise disjoint and jointly cover the live
/// counterpart entities. `include_dead` widens the counterpart universe to
/// entities with no relations at all.
std::vector<DependencyEdge> classify_all(const RelationSet& relations,
                                         bool include_dead = false);

}  // namespace xray

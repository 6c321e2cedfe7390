#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xray {

enum class EntityKind { Attribute, Method, MergedMethod, TryCatchBlock, Constructor };

std::string_view to_string(EntityKind kind);

/// An analysis node: attribute, signature-qualified method or constructor,
/// merged override group, or synthetic try-catch block.
struct Entity {
    std::string id;       // unique, stable key; doubles as the display label
    EntityKind kind = EntityKind::Method;
    std::vector<std::string> members;  // MergedMethod: qualified signatures, root-first
    std::string declared_in;           // defining class, empty for merged entities
    std::string signature;             // erased signature for method-like kinds

    bool method_like() const { return kind != EntityKind::Attribute; }

    bool operator==(const Entity&) const = default;
};

enum class RelationKind { Uses, Calls, Combined };

std::string_view to_string(RelationKind kind);

/// The two elementary relations between entities, plus the entity records
/// themselves. `uses` pairs go method-like -> attribute, `calls` pairs
/// method-like -> method-like with no self loops.
struct RelationSet {
    std::vector<Entity> entities;  // sorted by id
    std::set<std::pair<std::string, std::string>> uses;
    std::set<std::pair<std::string, std::string>> calls;

    const Entity* find(std::string_view id) const;
    bool has(std::string_view id) const { return find(id) != nullptr; }

    std::vector<std::string> attribute_ids() const;
    std::vector<std::string> method_ids() const;  // every method-like entity

    /// Checks the structural invariants; throws InconsistentInputs on failure.
    void validate() const;
};

}  // namespace xray

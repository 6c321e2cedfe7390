#pragma once

#include <map>
#include <string>
#include <vector>

#include "xray/model.hpp"

namespace xray {

struct OverridePair {
    std::string child_class;
    std::string ancestor_class;
    std::string signature;

    bool operator==(const OverridePair&) const = default;
};

/// Member-resolution tables for a set of classes. Borrows the ClassModels it
/// was built from; keep the owning SourceUnits alive while using it.
class Hierarchy {
public:
    struct VisibleField {
        std::string attr_id;      // simple name, "#super"-suffixed when shadowed
        std::string simple_name;
        std::string declared_in;
        const FieldDecl* decl = nullptr;
    };

    struct MethodImpl {
        std::string declared_in;
        const MethodDecl* decl = nullptr;
    };

    /// One visible (non-constructor) method signature. `impls` is ordered
    /// root-first; two or more impls means the signature is overridden.
    struct MethodSlot {
        std::string signature;
        std::vector<MethodImpl> impls;

        bool overridden() const { return impls.size() >= 2; }
    };

    struct ClassView {
        const ClassModel* model = nullptr;
        std::vector<std::string> chain;  // self first, then ancestors up to the root
        std::vector<VisibleField> fields;
        std::vector<MethodSlot> method_slots;
        std::vector<MethodImpl> constructors;  // own constructors only
    };

    const ClassView& view(const std::string& class_name) const;  // throws UnknownClass
    const ClassModel* find(const std::string& class_name) const;  // nullptr when absent
    bool has_class(const std::string& class_name) const;

    const std::vector<OverridePair>& override_pairs() const { return override_pairs_; }
    const std::vector<std::string>& class_names() const { return class_names_; }

    /// Field lookup from `class_name` following the extends chain; returns the
    /// declaring class name, or empty when the name is not a visible field.
    std::string field_owner(const std::string& class_name, const std::string& field_name) const;

private:
    friend Hierarchy resolve_hierarchy(const std::vector<const ClassModel*>&, bool);

    std::map<std::string, ClassView> views_;
    std::vector<OverridePair> override_pairs_;
    std::vector<std::string> class_names_;  // declaration order
};

/// Builds the child-to-parent map and per-class member tables. Raises
/// CycleError on a cyclic extends chain and UnknownSuperclass when a parent is
/// missing from the set, unless `allow_external_super` treats such parents as
/// empty external classes.
Hierarchy resolve_hierarchy(const std::vector<const ClassModel*>& classes,
                            bool allow_external_super = false);

/// Convenience overload for a single unit.
Hierarchy resolve_hierarchy(const SourceUnit& unit, bool allow_external_super = false);

}  // namespace xray

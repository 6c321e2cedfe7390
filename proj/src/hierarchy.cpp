#include "xray/hierarchy.hpp"

#include <algorithm>
#include <set>

#include "xray/errors.hpp"

namespace xray {

const Hierarchy::ClassView& Hierarchy::view(const std::string& class_name) const {
    auto it = views_.find(class_name);
    if (it == views_.end()) throw UnknownClass("unknown class '" + class_name + "'");
    return it->second;
}

const ClassModel* Hierarchy::find(const std::string& class_name) const {
    auto it = views_.find(class_name);
    return it == views_.end() ? nullptr : it->second.model;
}

bool Hierarchy::has_class(const std::string& class_name) const {
    return views_.count(class_name) != 0;
}

std::string Hierarchy::field_owner(const std::string& class_name,
                                   const std::string& field_name) const {
    auto it = views_.find(class_name);
    if (it == views_.end()) return {};
    for (const auto& cls : it->second.chain) {
        const ClassModel* model = find(cls);
        if (model && model->find_field(field_name)) return cls;
    }
    return {};
}

Hierarchy resolve_hierarchy(const std::vector<const ClassModel*>& in_classes,
                            bool allow_external_super) {
    std::vector<const ClassModel*> classes;
    classes.reserve(in_classes.size());
    for (const ClassModel* cls : in_classes)
        if (cls) classes.push_back(cls);

    Hierarchy h;
    std::map<std::string, const ClassModel*> by_name;
    for (const ClassModel* cls : classes) {
        if (!by_name.emplace(cls->name, cls).second)
            throw DuplicateMember("duplicate class '" + cls->name + "'", cls->span);
        h.class_names_.push_back(cls->name);
    }

    // Validate the extends relation before building any view.
    for (const ClassModel* cls : classes) {
        std::set<std::string> seen;
        const ClassModel* cur = cls;
        while (cur) {
            if (!seen.insert(cur->name).second)
                throw CycleError("cyclic extends chain through class '" + cur->name + "'");
            if (!cur->superclass) break;
            auto parent = by_name.find(*cur->superclass);
            if (parent == by_name.end()) {
                if (allow_external_super) break;  // external parent, empty members
                throw UnknownSuperclass("class '" + cur->name + "' extends unknown class '" +
                                        *cur->superclass + "'");
            }
            cur = parent->second;
        }
    }

    for (const ClassModel* cls : classes) {
        Hierarchy::ClassView view;
        view.model = cls;
        for (const ClassModel* cur = cls; cur;) {
            view.chain.push_back(cur->name);
            if (!cur->superclass) break;
            auto parent = by_name.find(*cur->superclass);
            cur = parent == by_name.end() ? nullptr : parent->second;
        }

        // Fields: the leaf declaration owns the simple name; shadowed ancestor
        // fields get a "#super" suffix per level.
        std::map<std::string, int> name_counts;
        for (const auto& cls_name : view.chain) {
            const ClassModel* model = by_name.at(cls_name);
            for (const auto& field : model->fields) {
                int& count = name_counts[field.name];
                std::string attr_id = field.name;
                for (int i = 0; i < count; ++i) attr_id += "#super";
                ++count;
                view.fields.push_back(
                    Hierarchy::VisibleField{attr_id, field.name, cls_name, &field});
            }
        }

        // Non-constructor methods grouped by erased signature, impls root-first.
        std::vector<Hierarchy::MethodSlot> slots;
        std::map<std::string, std::size_t> slot_index;
        for (const auto& cls_name : view.chain) {
            const ClassModel* model = by_name.at(cls_name);
            for (const auto& method : model->methods) {
                if (method.is_constructor) continue;
                const std::string sig = method.signature();
                auto it = slot_index.find(sig);
                if (it == slot_index.end()) {
                    slot_index.emplace(sig, slots.size());
                    slots.push_back(Hierarchy::MethodSlot{sig, {{cls_name, &method}}});
                } else {
                    slots[it->second].impls.push_back({cls_name, &method});
                }
            }
        }
        for (auto& slot : slots)
            std::reverse(slot.impls.begin(), slot.impls.end());  // root-first
        view.method_slots = std::move(slots);

        for (const auto& method : cls->methods)
            if (method.is_constructor) view.constructors.push_back({cls->name, &method});

        h.views_.emplace(cls->name, std::move(view));
    }

    // Override pairs: same erased signature in a class and one of its ancestors.
    std::set<std::pair<std::string, std::string>> recorded;
    for (const ClassModel* cls : classes) {
        const auto& view = h.views_.at(cls->name);
        for (const auto& slot : view.method_slots) {
            if (!slot.overridden()) continue;
            for (std::size_t i = 0; i + 1 < slot.impls.size(); ++i) {
                const std::string& ancestor = slot.impls[i].declared_in;
                const std::string& child = slot.impls[i + 1].declared_in;
                if (recorded.emplace(child + "/" + slot.signature, ancestor).second)
                    h.override_pairs_.push_back(OverridePair{child, ancestor, slot.signature});
            }
        }
    }
    return h;
}

Hierarchy resolve_hierarchy(const SourceUnit& unit, bool allow_external_super) {
    std::vector<const ClassModel*> classes;
    classes.reserve(unit.classes.size());
    for (const auto& cls : unit.classes) classes.push_back(&cls);
    return resolve_hierarchy(classes, allow_external_super);
}

}  // namespace xray

#include "xray/extract.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "xray/errors.hpp"

namespace xray {

std::string_view to_string(EntityKind kind) {
    switch (kind) {
        case EntityKind::Attribute: return "Attribute";
        case EntityKind::Method: return "Method";
        case EntityKind::MergedMethod: return "MergedMethod";
        case EntityKind::TryCatchBlock: return "TryCatchBlock";
        case EntityKind::Constructor: return "Constructor";
    }
    return "?";
}

std::string_view to_string(RelationKind kind) {
    switch (kind) {
        case RelationKind::Uses: return "uses";
        case RelationKind::Calls: return "calls";
        case RelationKind::Combined: return "combined";
    }
    return "?";
}

const Entity* RelationSet::find(std::string_view id) const {
    for (const auto& e : entities)
        if (e.id == id) return &e;
    return nullptr;
}

std::vector<std::string> RelationSet::attribute_ids() const {
    std::vector<std::string> ids;
    for (const auto& e : entities)
        if (e.kind == EntityKind::Attribute) ids.push_back(e.id);
    return ids;
}

std::vector<std::string> RelationSet::method_ids() const {
    std::vector<std::string> ids;
    for (const auto& e : entities)
        if (e.method_like()) ids.push_back(e.id);
    return ids;
}

void RelationSet::validate() const {
    std::set<std::string> ids;
    for (const auto& e : entities) {
        if (!ids.insert(e.id).second)
            throw InconsistentInputs("duplicate entity id '" + e.id + "'");
        if (e.kind == EntityKind::MergedMethod && e.members.size() < 2)
            throw InconsistentInputs("merged entity '" + e.id + "' has fewer than 2 members");
    }
    for (const auto& [src, dst] : uses) {
        const Entity* s = find(src);
        const Entity* d = find(dst);
        if (!s || !d)
            throw InconsistentInputs("uses pair references unknown entity");
        if (!s->method_like() || d->kind != EntityKind::Attribute)
            throw InconsistentInputs("uses pair (" + src + ", " + dst +
                                     ") must connect a method-like entity to an attribute");
    }
    for (const auto& [src, dst] : calls) {
        const Entity* s = find(src);
        const Entity* d = find(dst);
        if (!s || !d)
            throw InconsistentInputs("calls pair references unknown entity");
        if (!s->method_like() || !d->method_like())
            throw InconsistentInputs("calls pair (" + src + ", " + dst +
                                     ") must connect method-like entities");
        if (src == dst) throw InconsistentInputs("calls self-loop on '" + src + "'");
    }
}

std::map<std::string, AccessorInfo> detect_accessors(const ClassModel& model) {
    std::map<std::string, AccessorInfo> accessors;
    for (const auto& method : model.methods) {
        if (method.is_constructor || !method.has_body) continue;
        if (method.params.empty() && !method.return_type.empty() &&
            method.return_type != "void" && method.body.size() == 1 &&
            method.body[0].kind == EventKind::FieldRead) {
            accessors.emplace(method.signature(),
                              AccessorInfo{method.body[0].target, AccessorMode::Get});
            continue;
        }
        if (method.params.size() == 1 && !method.params[0].name.empty() &&
            method.body.size() == 2 && method.body[0].kind == EventKind::FieldWrite &&
            method.body[1].kind == EventKind::ParamRead &&
            method.body[1].target == method.params[0].name) {
            accessors.emplace(method.signature(),
                              AccessorInfo{method.body[0].target, AccessorMode::Set});
        }
    }
    return accessors;
}

namespace {

void sort_entities(RelationSet& rel) {
    std::sort(rel.entities.begin(), rel.entities.end(),
              [](const Entity& a, const Entity& b) { return a.id < b.id; });
}

struct Carrier {
    std::string entity_id;
    std::string declared_in;        // class owning the body, for name binding
    std::vector<Event> events;
    const MethodDecl* decl = nullptr;  // null for try-catch carriers
};

}  // namespace

RelationSet extract_relations(const Hierarchy& h, const std::string& focus) {
    const Hierarchy::ClassView& view = h.view(focus);

    RelationSet rel;

    // Attribute entities: every visible field, shadowed inherited ones under
    // their "#super" id.
    std::map<std::pair<std::string, std::string>, std::string> attr_id;
    for (const auto& field : view.fields) {
        Entity e;
        e.id = field.attr_id;
        e.kind = EntityKind::Attribute;
        e.declared_in = field.declared_in;
        rel.entities.push_back(e);
        attr_id[{field.declared_in, field.simple_name}] = field.attr_id;
    }

    // Method-like entities. Members of override groups carry class-qualified
    // ids until merge_overrides folds them together.
    std::map<std::pair<std::string, std::string>, std::string> method_id;
    std::vector<Carrier> carriers;

    auto add_method_entity = [&](const std::string& id, EntityKind kind,
                                 const std::string& declared_in, const MethodDecl* decl) {
        Entity e;
        e.id = id;
        e.kind = kind;
        e.declared_in = declared_in;
        e.signature = decl->signature();
        rel.entities.push_back(e);
        method_id[{declared_in, decl->signature()}] = id;
        carriers.push_back(Carrier{id, declared_in, {}, decl});
    };

    for (const auto& slot : view.method_slots) {
        if (slot.overridden()) {
            for (const auto& impl : slot.impls)
                add_method_entity(impl.declared_in + "." + slot.signature, EntityKind::Method,
                                  impl.declared_in, impl.decl);
        } else {
            const auto& impl = slot.impls.front();
            add_method_entity(slot.signature, EntityKind::Method, impl.declared_in, impl.decl);
        }
    }

    const bool sole_ctor = view.constructors.size() == 1;
    std::vector<std::string> ctor_entity_ids;
    for (const auto& ctor : view.constructors) {
        const std::string id = sole_ctor ? focus + "()" : ctor.decl->signature();
        add_method_entity(id, EntityKind::Constructor, focus, ctor.decl);
        ctor_entity_ids.push_back(id);
    }

    // Try-catch entities, named <method>.<tryN>; qualified further when the
    // short form would collide.
    std::map<std::string, int> try_id_count;
    for (const auto& carrier : carriers)
        for (const auto& tb : carrier.decl->try_blocks)
            ++try_id_count[carrier.decl->name + "." + tb.id];

    struct TryCarrier {
        std::string entity_id;
        std::string declared_in;
        const TryBlock* block;
    };
    std::vector<TryCarrier> try_carriers;
    for (const auto& carrier : carriers) {
        for (const auto& tb : carrier.decl->try_blocks) {
            std::string short_id = carrier.decl->name + "." + tb.id;
            std::string id =
                try_id_count[short_id] > 1 ? carrier.entity_id + "." + tb.id : short_id;
            Entity e;
            e.id = id;
            e.kind = EntityKind::TryCatchBlock;
            e.declared_in = carrier.declared_in;
            rel.entities.push_back(e);
            try_carriers.push_back(TryCarrier{id, carrier.declared_in, &tb});
        }
    }

    // Accessor detection per class of the chain, keyed by declaring class.
    std::map<std::string, std::map<std::string, AccessorInfo>> accessors;
    for (const auto& cls_name : view.chain)
        if (const ClassModel* model = h.find(cls_name))
            accessors[cls_name] = detect_accessors(*model);

    // Resolves a self-call signature from `from_class` to its defining class.
    auto resolve_method_owner = [&](const std::string& from_class,
                                    const std::string& sig) -> std::string {
        const auto& from_view = h.view(from_class);
        for (const auto& cls_name : from_view.chain) {
            const ClassModel* model = h.find(cls_name);
            if (!model) continue;
            for (const auto& m : model->methods)
                if (!m.is_constructor && m.signature() == sig) return cls_name;
        }
        return {};
    };

    auto ctor_entity_for_arity = [&](int arity) -> std::string {
        if (ctor_entity_ids.empty()) return {};
        for (std::size_t i = 0; i < view.constructors.size(); ++i)
            if (static_cast<int>(view.constructors[i].decl->arity()) == arity)
                return ctor_entity_ids[i];
        return ctor_entity_ids.front();
    };

    auto process_events = [&](const std::string& carrier_id, const std::string& declared_in,
                              const std::vector<Event>& events) {
        for (const Event& ev : events) {
            switch (ev.kind) {
                case EventKind::FieldRead:
                case EventKind::FieldWrite: {
                    const std::string owner = h.field_owner(declared_in, ev.target);
                    if (owner.empty()) break;
                    auto it = attr_id.find({owner, ev.target});
                    if (it != attr_id.end()) rel.uses.insert({carrier_id, it->second});
                    break;
                }
                case EventKind::SelfCall: {
                    const std::string owner = resolve_method_owner(declared_in, ev.target);
                    if (owner.empty()) break;
                    auto callee = method_id.find({owner, ev.target});
                    if (callee != method_id.end() && callee->second != carrier_id)
                        rel.calls.insert({carrier_id, callee->second});
                    // Accessor transparency: a call to a trivial getter or
                    // setter also counts as using the underlying field.
                    auto acc_map = accessors.find(owner);
                    if (acc_map != accessors.end()) {
                        auto acc = acc_map->second.find(ev.target);
                        if (acc != acc_map->second.end()) {
                            const std::string field_cls =
                                h.field_owner(owner, acc->second.field);
                            if (!field_cls.empty()) {
                                auto attr = attr_id.find({field_cls, acc->second.field});
                                if (attr != attr_id.end())
                                    rel.uses.insert({carrier_id, attr->second});
                            }
                        }
                    }
                    break;
                }
                case EventKind::CtorCall: {
                    if (ev.target != focus) break;
                    const std::string ctor = ctor_entity_for_arity(ev.arity);
                    if (!ctor.empty() && ctor != carrier_id)
                        rel.calls.insert({carrier_id, ctor});
                    break;
                }
                case EventKind::ParamRead:
                case EventKind::LocalOp:
                    break;
            }
        }
    };

    for (const auto& carrier : carriers) {
        // Events inside a try block belong to the try-catch entity alone.
        std::vector<Event> own;
        for (const Event& ev : carrier.decl->body) {
            bool claimed = false;
            for (const auto& tb : carrier.decl->try_blocks)
                if (tb.span.contains(ev.span)) { claimed = true; break; }
            if (!claimed) own.push_back(ev);
        }
        process_events(carrier.entity_id, carrier.declared_in, own);

        // Dependency on the class's own type: a parameter typed as the focus
        // class pulls in the constructor.
        if (carrier.decl->params.size()) {
            for (const auto& p : carrier.decl->params) {
                if (p.type != focus) continue;
                const std::string ctor = ctor_entity_for_arity(-1);
                if (!ctor.empty() && ctor != carrier.entity_id)
                    rel.calls.insert({carrier.entity_id, ctor});
                break;
            }
        }
    }

    for (const auto& tc : try_carriers) {
        process_events(tc.entity_id, tc.declared_in, tc.block->body_events);
        process_events(tc.entity_id, tc.declared_in, tc.block->handler_events);
    }

    RelationSet merged = merge_overrides(rel, h);
    sort_entities(merged);
    merged.validate();
    return merged;
}

RelationSet extract_relations(const SourceUnit& unit, const Hierarchy& hierarchy,
                              const std::string& focus) {
    if (!unit.find_class(focus) && !hierarchy.has_class(focus))
        throw UnknownClass("unknown class '" + focus + "'");
    return extract_relations(hierarchy, focus);
}

RelationSet merge_overrides(const RelationSet& relations, const Hierarchy& hierarchy) {
    // Candidate groups: Method entities sharing an erased signature whose
    // declaring classes lie on one extends chain.
    std::map<std::string, std::vector<const Entity*>> by_signature;
    for (const auto& e : relations.entities)
        if (e.kind == EntityKind::Method && !e.signature.empty() && !e.declared_in.empty())
            by_signature[e.signature].push_back(&e);

    std::map<std::string, std::string> remap;  // old id -> merged id
    std::vector<Entity> merged_entities;

    for (auto& [signature, group] : by_signature) {
        if (group.size() < 2) continue;

        const std::vector<std::string>* chain = nullptr;
        for (const Entity* candidate : group) {
            if (!hierarchy.has_class(candidate->declared_in)) continue;
            const auto& view = hierarchy.view(candidate->declared_in);
            bool covers_all = true;
            for (const Entity* other : group) {
                if (std::find(view.chain.begin(), view.chain.end(), other->declared_in) ==
                    view.chain.end()) {
                    covers_all = false;
                    break;
                }
            }
            if (covers_all) { chain = &view.chain; break; }
        }
        if (!chain) continue;  // unrelated same-signature entities stay apart

        // Order members root-first along the chain.
        std::vector<const Entity*> ordered;
        for (auto it = chain->rbegin(); it != chain->rend(); ++it)
            for (const Entity* e : group)
                if (e->declared_in == *it) ordered.push_back(e);

        Entity merged;
        merged.id = signature + "#merged";
        merged.kind = EntityKind::MergedMethod;
        merged.signature = signature;
        for (const Entity* e : ordered) {
            merged.members.push_back(e->declared_in + "." + signature);
            remap[e->id] = merged.id;
        }
        merged_entities.push_back(std::move(merged));
    }

    if (remap.empty()) return relations;

    RelationSet out;
    for (const auto& e : relations.entities)
        if (!remap.count(e.id)) out.entities.push_back(e);
    for (auto& e : merged_entities) out.entities.push_back(std::move(e));

    auto mapped = [&](const std::string& id) {
        auto it = remap.find(id);
        return it == remap.end() ? id : it->second;
    };
    for (const auto& [src, dst] : relations.uses) out.uses.insert({mapped(src), mapped(dst)});
    for (const auto& [src, dst] : relations.calls) {
        std::string s = mapped(src);
        std::string d = mapped(dst);
        if (s != d) out.calls.insert({s, d});
    }
    sort_entities(out);
    return out;
}

fca::FormalContext build_context(const RelationSet& relations, RelationKind mode) {
    std::vector<std::string> objects = relations.method_ids();
    std::sort(objects.begin(), objects.end());

    std::vector<std::string> properties;
    std::vector<std::pair<std::string, std::string>> incidence;
    switch (mode) {
        case RelationKind::Uses:
            properties = relations.attribute_ids();
            incidence.assign(relations.uses.begin(), relations.uses.end());
            break;
        case RelationKind::Calls:
            properties = objects;
            incidence.assign(relations.calls.begin(), relations.calls.end());
            break;
        case RelationKind::Combined:
            properties = relations.attribute_ids();
            for (const auto& id : objects) properties.push_back(id);
            incidence.assign(relations.uses.begin(), relations.uses.end());
            incidence.insert(incidence.end(), relations.calls.begin(), relations.calls.end());
            break;
    }
    std::sort(properties.begin(), properties.end());
    return fca::FormalContext::create(std::move(objects), std::move(properties),
                                      incidence);
}

}  // namespace xray

#include "xray/views.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "xray/errors.hpp"

namespace xray {

const Group* XRayView::find_group(const std::string& label) const {
    for (const auto& g : groups)
        if (g.label == label) return &g;
    return nullptr;
}

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ',';
        out += ids[i];
    }
    return out;
}

std::set<std::string> full_uses_image(const RelationSet& relations, const std::string& id) {
    RelationSelector sel{RelationKind::Uses, false};
    std::set<std::string> out = image(relations, sel, {id});
    auto trans = transitive_image(relations, sel, {id});
    out.insert(trans.targets.begin(), trans.targets.end());
    return out;
}

}  // namespace

XRayView state_usage(const RelationSet& relations, const fca::Lattice& uses_lattice) {
    XRayView view;
    view.name = "StateUsage";

    const std::vector<std::string> attributes = relations.attribute_ids();
    const std::vector<std::string> methods = relations.method_ids();

    std::map<std::string, std::set<std::string>> users;  // attribute -> direct users
    for (const auto& [m, a] : relations.uses) users[a].insert(m);

    // Per-attribute exclusive user sets: the methods listed are by
    // construction the only ones touching the attribute.
    for (const auto& attr : attributes) {
        auto it = users.find(attr);
        if (it == users.end() || it->second.empty()) continue;
        Group g;
        g.label = "users(" + attr + ")";
        g.role = "attribute_users";
        g.members.assign(it->second.begin(), it->second.end());
        view.groups.push_back(std::move(g));
    }

    // Attribute sets that co-occur as the intent of a proper concept.
    for (const auto& concept_ : uses_lattice.concepts) {
        if (!concept_.proper()) continue;
        Group g;
        g.label = "collaborating(" + join_ids(concept_.intent) + ")";
        g.role = "collaborating_attributes";
        g.members = concept_.intent;
        view.groups.push_back(std::move(g));
    }

    Group stateless;
    stateless.label = "stateless";
    stateless.role = "stateless_methods";
    for (const auto& m : methods)
        if (image(relations, RelationSelector{RelationKind::Uses, false}, {m}).empty())
            stateless.members.push_back(m);
    view.groups.push_back(std::move(stateless));

    Group dead;
    dead.label = "dead";
    dead.role = "dead_attributes";
    for (const auto& attr : attributes)
        if (!users.count(attr)) dead.members.push_back(attr);
    view.groups.push_back(std::move(dead));

    Group all_state;
    all_state.label = "all-state";
    all_state.role = "all_state_methods";
    if (!attributes.empty()) {
        const std::set<std::string> attr_set(attributes.begin(), attributes.end());
        for (const auto& m : methods)
            if (full_uses_image(relations, m) == attr_set) all_state.members.push_back(m);
    }
    view.groups.push_back(std::move(all_state));

    return view;
}

XRayView method_clusters(const RelationSet& relations) {
    XRayView view;
    view.name = "MethodClusters";

    const fca::FormalContext ctx = build_context(relations, RelationKind::Combined);
    for (const auto& concept_ : fca::enumerate_concepts(ctx)) {
        if (!concept_.proper()) continue;
        Group g;
        g.label = "cluster(" + join_ids(concept_.intent) + ")";
        g.role = "cluster";
        g.members = concept_.extent;
        view.groups.push_back(std::move(g));
    }
    return view;
}

XRayView behaviour_skeleton(const RelationSet& relations, double core_coverage) {
    XRayView view;
    view.name = "BehaviourSkeleton";

    const std::vector<std::string> methods = relations.method_ids();
    const std::vector<std::string> attributes = relations.attribute_ids();

    std::set<std::string> call_targets;
    std::set<std::string> callers;
    for (const auto& [src, dst] : relations.calls) {
        callers.insert(src);
        call_targets.insert(dst);
    }

    Group interfaces{"interfaces", "interface_methods", {}};
    Group entry_points{"entry-points", "entry_points", {}};
    Group internal{"internal", "internal_methods", {}};
    Group isolated{"isolated", "isolated_methods", {}};
    for (const auto& m : methods) {
        const bool target = call_targets.count(m) != 0;
        const bool caller = callers.count(m) != 0;
        if (!target) interfaces.members.push_back(m);
        if (!target && caller) entry_points.members.push_back(m);
        if (target) internal.members.push_back(m);
        if (!target && !caller) isolated.members.push_back(m);
    }
    view.groups.push_back(std::move(interfaces));
    view.groups.push_back(std::move(entry_points));
    view.groups.push_back(std::move(internal));
    view.groups.push_back(std::move(isolated));

    if (!attributes.empty()) {
        for (const auto& m : methods) {
            const std::set<std::string> img = full_uses_image(relations, m);
            const double coverage =
                static_cast<double>(img.size()) / static_cast<double>(attributes.size());
            if (coverage + 1e-12 < core_coverage) continue;
            Group g;
            g.label = "core(" + m + ")";
            g.role = "core";
            g.members.assign(img.begin(), img.end());
            view.groups.push_back(std::move(g));
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", core_coverage);
        view.notes.push_back(std::string("core = methods whose direct or call-transitive "
                                         "attribute coverage reaches a fraction of ") +
                             buf + " of the instance variables");
    }

    // Methods that construct or receive instances of the analysed class
    // depend on the class as a whole, through its constructor.
    std::map<std::string, std::set<std::string>> ctor_callers;  // ctor -> callers
    for (const auto& [src, dst] : relations.calls) {
        const Entity* callee = relations.find(dst);
        if (callee && callee->kind == EntityKind::Constructor) ctor_callers[dst].insert(src);
    }
    for (const auto& [ctor, srcs] : ctor_callers) {
        std::vector<std::string> ids(srcs.begin(), srcs.end());
        view.notes.push_back("methods {" + join_ids(ids) + "} construct or receive instances of " +
                             "the analysed class: through " + ctor +
                             " they depend on the class as a whole, not on single members");
    }

    return view;
}

std::size_t XRayReport::proper_concept_count() const {
    std::size_t count = 0;
    for (const auto& c : lattice.concepts)
        if (c.proper()) ++count;
    return count;
}

XRayReport compose_report(std::string class_name, RelationSet relations, RelationKind mode,
                          fca::FormalContext context, fca::Lattice lattice,
                          std::vector<DependencyEdge> dependencies,
                          std::vector<XRayView> views) {
    std::set<std::string> known;
    for (const auto& e : relations.entities) known.insert(e.id);

    auto require = [&](const std::string& id, const char* where) {
        if (!known.count(id))
            throw InconsistentInputs(std::string(where) + " references unknown entity '" + id +
                                     "'");
    };

    for (const auto& id : context.objects) require(id, "context");
    for (const auto& id : context.properties) require(id, "context");
    for (const auto& edge : dependencies) {
        for (const auto& id : edge.sources) require(id, "dependency edge");
        for (const auto& id : edge.targets) require(id, "dependency edge");
    }
    for (const auto& view : views)
        for (const auto& group : view.groups)
            for (const auto& id : group.members) require(id, view.name.c_str());

    XRayReport report;
    report.class_name = std::move(class_name);
    report.relations = std::move(relations);
    report.context_mode = mode;
    report.context = std::move(context);
    report.lattice = std::move(lattice);
    report.dependencies = std::move(dependencies);
    report.views = std::move(views);
    return report;
}

}  // namespace xray

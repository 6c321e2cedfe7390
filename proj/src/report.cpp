#include "xray/report.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace xray {

namespace {

using nlohmann::json;

json entity_to_json(const Entity& e) {
    json j;
    j["id"] = e.id;
    j["kind"] = std::string(to_string(e.kind));
    if (!e.members.empty()) j["members"] = e.members;
    return j;
}

json pairs_to_json(const std::set<std::pair<std::string, std::string>>& pairs) {
    json arr = json::array();
    for (const auto& [a, b] : pairs) arr.push_back(json::array({a, b}));
    return arr;
}

}  // namespace

std::string emit_json(const XRayReport& report) {
    json j;
    j["class"] = report.class_name;

    json meta;
    meta["tool"] = std::string(kToolName);
    meta["version"] = std::string(kToolVersion);
    meta["context_mode"] = std::string(to_string(report.context_mode));
    j["meta"] = meta;

    json entities = json::array();
    for (const auto& e : report.relations.entities) entities.push_back(entity_to_json(e));
    j["entities"] = entities;

    json relations;
    relations["uses"] = pairs_to_json(report.relations.uses);
    relations["calls"] = pairs_to_json(report.relations.calls);
    relations["uses_count"] = report.relations.uses.size();
    relations["calls_count"] = report.relations.calls.size();
    relations["entity_count"] = report.relations.entities.size();
    j["relations"] = relations;

    json concepts;
    concepts["mode"] = std::string(to_string(report.context_mode));
    concepts["concept_count"] = report.lattice.concepts.size();
    concepts["proper_concept_count"] = report.proper_concept_count();
    json items = json::array();
    for (const auto& c : report.lattice.concepts) {
        json item;
        item["extent"] = c.extent;
        item["intent"] = c.intent;
        item["proper"] = c.proper();
        items.push_back(item);
    }
    concepts["items"] = items;
    json covers = json::array();
    for (const auto& [parent, child] : report.lattice.covers)
        covers.push_back(json::array({parent, child}));
    concepts["covers"] = covers;
    j["concepts"] = concepts;

    json deps = json::array();
    for (const auto& edge : report.dependencies) {
        json d;
        d["sources"] = edge.sources;
        d["targets"] = edge.targets;
        d["relation"] = to_string(edge.selector);
        d["kind"] = std::string(to_string(edge.kind));
        d["aggregate"] = edge.aggregate;
        json witnesses = json::array();
        for (const auto& w : edge.witnesses) {
            json wj;
            wj["source"] = w.source;
            wj["via"] = w.via;
            wj["target"] = w.target;
            witnesses.push_back(wj);
        }
        d["witnesses"] = witnesses;
        deps.push_back(d);
    }
    j["dependencies"] = deps;

    json views = json::array();
    for (const auto& view : report.views) {
        json v;
        v["name"] = view.name;
        json groups = json::array();
        for (const auto& g : view.groups) {
            json gj;
            gj["label"] = g.label;
            gj["role"] = g.role;
            gj["members"] = g.members;
            groups.push_back(gj);
        }
        v["groups"] = groups;
        v["notes"] = view.notes;
        views.push_back(v);
    }
    j["views"] = views;

    return j.dump(2) + "\n";
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string brace_list(const std::vector<std::string>& ids) {
    std::string out = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        out += ids[i];
    }
    out += "}";
    return out;
}

}  // namespace

std::string emit_dot(const XRayReport& report, bool reduced_labels) {
    const auto& lattice = report.lattice;
    std::ostringstream out;
    out << "digraph concept_lattice {\n";
    out << "  rankdir=TB;\n";
    out << "  node [shape=box];\n";

    std::vector<std::string> labels(lattice.concepts.size());
    if (!reduced_labels) {
        for (std::size_t i = 0; i < lattice.concepts.size(); ++i)
            labels[i] = dot_escape(brace_list(lattice.concepts[i].extent)) + "\\n" +
                        dot_escape(brace_list(lattice.concepts[i].intent));
    } else {
        // Reduced labelling: each object names the smallest concept holding
        // it, each property the largest.
        std::vector<std::vector<std::string>> own_objects(lattice.concepts.size());
        std::vector<std::vector<std::string>> own_props(lattice.concepts.size());
        for (const auto& id : report.context.objects) {
            std::size_t best = lattice.concepts.size();
            for (std::size_t i = 0; i < lattice.concepts.size(); ++i) {
                const auto& exts = lattice.concepts[i].extent;
                if (std::find(exts.begin(), exts.end(), id) == exts.end()) continue;
                if (best == lattice.concepts.size() ||
                    exts.size() < lattice.concepts[best].extent.size())
                    best = i;
            }
            if (best < lattice.concepts.size()) own_objects[best].push_back(id);
        }
        for (const auto& id : report.context.properties) {
            std::size_t best = lattice.concepts.size();
            for (std::size_t i = 0; i < lattice.concepts.size(); ++i) {
                const auto& ints = lattice.concepts[i].intent;
                if (std::find(ints.begin(), ints.end(), id) == ints.end()) continue;
                if (best == lattice.concepts.size() ||
                    lattice.concepts[i].extent.size() > lattice.concepts[best].extent.size())
                    best = i;
            }
            if (best < lattice.concepts.size()) own_props[best].push_back(id);
        }
        for (std::size_t i = 0; i < lattice.concepts.size(); ++i)
            labels[i] =
                dot_escape(brace_list(own_objects[i])) + "\\n" + dot_escape(brace_list(own_props[i]));
    }

    for (std::size_t i = 0; i < lattice.concepts.size(); ++i)
        out << "  c" << i << " [label=\"" << labels[i] << "\"];\n";

    // Same extent size, same rank: the top concept renders topmost.
    std::map<std::size_t, std::vector<std::size_t>, std::greater<>> by_size;
    for (std::size_t i = 0; i < lattice.concepts.size(); ++i)
        by_size[lattice.concepts[i].extent.size()].push_back(i);
    for (const auto& [size, nodes] : by_size) {
        out << "  { rank=same;";
        for (std::size_t i : nodes) out << " c" << i << ";";
        out << " }\n";
    }

    for (const auto& [parent, child] : lattice.covers)
        out << "  c" << parent << " -> c" << child << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

const char* kReset = "\033[0m";
const char* kBold = "\033[1m";
const char* kDim = "\033[2m";

struct Paint {
    bool enabled = false;
    std::string bold(const std::string& s) const { return enabled ? kBold + s + kReset : s; }
    std::string dim(const std::string& s) const { return enabled ? kDim + s + kReset : s; }
};

}  // namespace

std::string emit_text(const XRayReport& report, const std::set<std::string>& sections,
                      bool color) {
    const Paint paint{color};
    auto wants = [&](const char* section) {
        return sections.empty() || sections.count(section) || sections.count("all");
    };

    std::ostringstream out;
    out << paint.bold("class " + report.class_name) << "\n";
    out << "entities: " << report.relations.entities.size()
        << "  uses: " << report.relations.uses.size()
        << "  calls: " << report.relations.calls.size() << "\n";

    for (const auto& e : report.relations.entities) {
        out << "  " << e.id << "  " << paint.dim(std::string(to_string(e.kind)));
        if (!e.members.empty()) out << "  = " << brace_list(e.members);
        out << "\n";
    }

    if (wants("concepts")) {
        out << paint.bold("concepts") << " (" << to_string(report.context_mode)
            << " mode): " << report.lattice.concepts.size() << " total, "
            << report.proper_concept_count() << " proper\n";
        for (std::size_t i = 0; i < report.lattice.concepts.size(); ++i) {
            const auto& c = report.lattice.concepts[i];
            out << "  #" << i << "  " << brace_list(c.extent) << " / " << brace_list(c.intent)
                << (c.proper() ? "" : "  (improper)") << "\n";
        }
        for (const auto& [parent, child] : report.lattice.covers)
            out << "  cover #" << parent << " -> #" << child << "\n";
    }

    if (wants("deps")) {
        out << paint.bold("dependencies") << ": " << report.dependencies.size() << "\n";
        for (const auto& edge : report.dependencies) {
            out << "  " << brace_list(edge.sources) << " -[" << to_string(edge.selector)
                << "]-> " << brace_list(edge.targets) << "  " << to_string(edge.kind);
            if (edge.aggregate) out << "  (aggregate)";
            out << "\n";
            for (const auto& w : edge.witnesses)
                out << "    via " << w.source << " -> " << w.via << " -> " << w.target << "\n";
        }
    }

    for (const auto& view : report.views) {
        const char* section = view.name == "StateUsage"
                                  ? "state"
                                  : (view.name == "MethodClusters" ? "clusters" : "skeleton");
        if (!wants(section)) continue;
        out << paint.bold(view.name) << "\n";
        for (const auto& g : view.groups) {
            out << "  " << g.label << ": ";
            out << (g.members.empty() ? std::string("-")
                                      : brace_list(g.members).substr(1, brace_list(g.members).size() - 2));
            out << "\n";
        }
        for (const auto& note : view.notes) out << "  note: " << note << "\n";
    }
    return out.str();
}

}  // namespace xray

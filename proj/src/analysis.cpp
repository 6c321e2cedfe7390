#include "xray/analysis.hpp"

#include <fstream>
#include <sstream>

#include "xray/classify.hpp"
#include "xray/errors.hpp"
#include "xray/extract.hpp"
#include "xray/parser.hpp"

namespace xray {

bool is_driver_class(const ClassModel& model) {
    if (!model.fields.empty()) return false;
    if (model.methods.size() != 1) return false;
    const MethodDecl& only = model.methods.front();
    return !only.is_constructor && only.name == "main";
}

namespace {

std::string pick_focus(const std::vector<const ClassModel*>& classes,
                       const std::string& requested) {
    if (!requested.empty()) return requested;
    std::vector<std::string> candidates;
    for (const ClassModel* cls : classes)
        if (!is_driver_class(*cls)) candidates.push_back(cls->name);
    if (candidates.size() == 1) return candidates.front();
    if (candidates.empty())
        throw UsageError("no analysable class found (every class is a driver)");
    std::string names;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (i) names += ", ";
        names += candidates[i];
    }
    throw UsageError("several candidate classes (" + names + "); pick one with --class");
}

}  // namespace

Analysis analyze_sources(const std::vector<std::pair<std::string, std::string>>& sources,
                         const AnalysisOptions& options) {
    Analysis analysis;
    analysis.units = parse_sources(sources);

    std::vector<const ClassModel*> classes;
    for (const auto& unit : analysis.units)
        for (const auto& cls : unit.classes) classes.push_back(&cls);

    analysis.hierarchy = resolve_hierarchy(classes, options.allow_external_super);
    analysis.focus_class = pick_focus(classes, options.focus_class);

    RelationSet relations = extract_relations(analysis.hierarchy, analysis.focus_class);

    fca::FormalContext context = build_context(relations, options.context_mode);
    fca::Lattice lattice = build_lattice(fca::enumerate_concepts(context));

    fca::Lattice uses_lattice =
        options.context_mode == RelationKind::Uses
            ? lattice
            : build_lattice(fca::enumerate_concepts(build_context(relations, RelationKind::Uses)));

    std::vector<DependencyEdge> dependencies = classify_all(relations, options.include_dead);

    std::vector<XRayView> views;
    views.push_back(state_usage(relations, uses_lattice));
    views.push_back(method_clusters(relations));
    views.push_back(behaviour_skeleton(relations, options.core_coverage));

    analysis.report =
        compose_report(analysis.focus_class, std::move(relations), options.context_mode,
                       std::move(context), std::move(lattice), std::move(dependencies),
                       std::move(views));
    return analysis;
}

Analysis analyze_files(const std::vector<std::string>& paths, const AnalysisOptions& options) {
    std::vector<std::pair<std::string, std::string>> sources;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw UsageError("cannot read input file '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        sources.emplace_back(path, buffer.str());
    }
    return analyze_sources(sources, options);
}

}  // namespace xray

#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "xray/analysis.hpp"
#include "xray/classify.hpp"
#include "xray/extract.hpp"
#include "xray/fca.hpp"
#include "xray/parser.hpp"

namespace xray::test {

inline std::string fixture_path(const std::string& name) {
    return std::string(XRAY_FIXTURES_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline Analysis analyze_fixture(const std::string& name, const std::string& focus = "") {
    AnalysisOptions options;
    options.focus_class = focus;
    return analyze_files({fixture_path(name)}, options);
}

inline RelationSet fixture_relations(const std::string& name, const std::string& focus = "") {
    return analyze_fixture(name, focus).report.relations;
}

// --- independent oracles -------------------------------------------------

// Concepts by brute force: close every object subset. Extent/intent pairs are
// normalised to ordered sets so results from different routes compare.
using ConceptKey = std::pair<std::set<std::string>, std::set<std::string>>;

inline std::set<ConceptKey> brute_force_concepts(const fca::FormalContext& ctx) {
    std::set<ConceptKey> out;
    const std::size_t n = ctx.objects.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::set<std::string> objs;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t{1} << i)) objs.insert(ctx.objects[i]);
        const std::set<std::string> intent = fca::prime_props(ctx, objs);
        const std::set<std::string> extent = fca::prime_objects(ctx, intent);
        out.insert({extent, intent});
    }
    return out;
}

inline ConceptKey key_of(const fca::Concept& c) {
    return {std::set<std::string>(c.extent.begin(), c.extent.end()),
            std::set<std::string>(c.intent.begin(), c.intent.end())};
}

inline fca::FormalContext random_context(std::mt19937& rng, std::size_t max_objects,
                                         std::size_t max_properties, double density) {
    std::uniform_int_distribution<std::size_t> object_count(0, max_objects);
    std::uniform_int_distribution<std::size_t> property_count(0, max_properties);
    std::bernoulli_distribution incident(density);

    const std::size_t g = object_count(rng);
    const std::size_t m = property_count(rng);
    std::vector<std::string> objects;
    std::vector<std::string> properties;
    for (std::size_t i = 0; i < g; ++i) objects.push_back("g" + std::to_string(i));
    for (std::size_t i = 0; i < m; ++i) properties.push_back("m" + std::to_string(i));

    std::vector<std::pair<std::string, std::string>> incidence;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (incident(rng)) incidence.emplace_back(objects[i], properties[j]);
    return fca::FormalContext::create(std::move(objects), std::move(properties), incidence);
}

inline RelationSet random_relations(std::mt19937& rng, std::size_t max_methods,
                                    std::size_t max_attributes, double uses_density,
                                    double calls_density) {
    std::uniform_int_distribution<std::size_t> method_count(1, max_methods);
    std::uniform_int_distribution<std::size_t> attribute_count(1, max_attributes);
    std::bernoulli_distribution with_uses(uses_density);
    std::bernoulli_distribution with_calls(calls_density);

    RelationSet rel;
    const std::size_t m = method_count(rng);
    const std::size_t a = attribute_count(rng);
    for (std::size_t i = 0; i < m; ++i) {
        Entity e;
        e.id = "M" + std::to_string(i);
        e.kind = EntityKind::Method;
        rel.entities.push_back(e);
    }
    for (std::size_t i = 0; i < a; ++i) {
        Entity e;
        e.id = "a" + std::to_string(i);
        e.kind = EntityKind::Attribute;
        rel.entities.push_back(e);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < a; ++j)
            if (with_uses(rng))
                rel.uses.insert({"M" + std::to_string(i), "a" + std::to_string(j)});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && with_calls(rng))
                rel.calls.insert({"M" + std::to_string(i), "M" + std::to_string(j)});
    rel.validate();
    return rel;
}

// Direct and transitive images by boolean matrix powers over the call graph,
// a different route than the BFS used by the implementation.
inline std::pair<std::set<std::string>, std::set<std::string>> brute_images(
    const RelationSet& rel, bool inverse, const std::set<std::string>& sources) {
    const std::vector<std::string> methods = rel.method_ids();
    const std::vector<std::string> attributes = rel.attribute_ids();
    const std::size_t n = methods.size();
    auto method_index = [&](const std::string& id) {
        for (std::size_t i = 0; i < n; ++i)
            if (methods[i] == id) return i;
        return n;
    };

    std::vector<std::vector<bool>> calls(n, std::vector<bool>(n, false));
    for (const auto& [src, dst] : rel.calls) calls[method_index(src)][method_index(dst)] = true;

    // calls^+ = union of calls^k for k = 1..n
    std::vector<std::vector<bool>> reach = calls;
    std::vector<std::vector<bool>> power = calls;
    for (std::size_t step = 1; step < n; ++step) {
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (power[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (calls[k][j]) next[i][j] = true;
        power = next;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (power[i][j]) reach[i][j] = true;
    }

    std::set<std::string> direct;
    std::set<std::string> transitive;
    if (!inverse) {
        for (const auto& e : sources)
            for (const auto& [src, dst] : rel.uses)
                if (src == e) direct.insert(dst);
        for (const auto& e : sources) {
            const std::size_t ei = method_index(e);
            if (ei == n) continue;
            for (std::size_t via = 0; via < n; ++via) {
                if (!reach[ei][via]) continue;
                for (const auto& [src, dst] : rel.uses)
                    if (src == methods[via] && !direct.count(dst)) transitive.insert(dst);
            }
        }
    } else {
        for (const auto& e : sources)
            for (const auto& [src, dst] : rel.uses)
                if (dst == e) direct.insert(src);
        for (const auto& e : sources) {
            for (const auto& [src, dst] : rel.uses) {
                if (dst != e) continue;
                const std::size_t via = method_index(src);
                for (std::size_t caller = 0; caller < n; ++caller)
                    if (reach[caller][via] && !direct.count(methods[caller]))
                        transitive.insert(methods[caller]);
            }
        }
    }
    (void)attributes;
    return {direct, transitive};
}

// Literal evaluation of the five dependency definitions over precomputed
// images. Returns the matching kind, or NotComparable when none matches, and
// reports through `matches` how many definitions matched (mutual exclusion).
inline DependencyKind brute_classify(const std::set<std::string>& direct,
                                     const std::set<std::string>& transitive,
                                     const std::set<std::string>& targets, int* matches = nullptr) {
    std::set<std::string> full = direct;
    full.insert(transitive.begin(), transitive.end());
    auto subset = [](const std::set<std::string>& x, const std::set<std::string>& y) {
        return std::includes(y.begin(), y.end(), x.begin(), x.end());
    };
    auto intersects = [](const std::set<std::string>& x, const std::set<std::string>& y) {
        for (const auto& v : x)
            if (y.count(v)) return true;
        return false;
    };

    int count = 0;
    DependencyKind kind = DependencyKind::NotComparable;
    if (!direct.empty() && direct == targets) { ++count; kind = DependencyKind::ExclusiveDirect; }
    if (!targets.empty() && subset(targets, direct) && targets != direct) {
        ++count;
        kind = DependencyKind::SharedDirect;
    }
    if (full == targets && intersects(transitive, targets)) {
        ++count;
        kind = DependencyKind::ExclusiveTransitive;
    }
    if (subset(targets, full) && targets != full && intersects(transitive, targets)) {
        ++count;
        kind = DependencyKind::SharedTransitive;
    }
    if (!intersects(full, targets)) { ++count; kind = DependencyKind::None; }
    if (matches) *matches = count;
    return count == 1 ? kind : DependencyKind::NotComparable;
}

inline bool has_edge(const std::vector<DependencyEdge>& edges,
                     const std::vector<std::string>& sources,
                     const std::vector<std::string>& targets, DependencyKind kind) {
    for (const auto& e : edges)
        if (e.sources == sources && e.targets == targets && e.kind == kind) return true;
    return false;
}

}  // namespace xray::test

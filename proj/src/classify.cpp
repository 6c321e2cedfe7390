#include "xray/classify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "xray/errors.hpp"

namespace xray {

std::string_view to_string(DependencyKind kind) {
    switch (kind) {
        case DependencyKind::ExclusiveDirect: return "ExclusiveDirect";
        case DependencyKind::SharedDirect: return "SharedDirect";
        case DependencyKind::ExclusiveTransitive: return "ExclusiveTransitive";
        case DependencyKind::SharedTransitive: return "SharedTransitive";
        case DependencyKind::None: return "None";
        case DependencyKind::NotComparable: return "NotComparable";
    }
    return "?";
}

std::string to_string(RelationSelector selector) {
    std::string out = selector.inverse ? "inverse-" : "";
    out += to_string(selector.relation);
    return out;
}

namespace {

using Pairs = std::set<std::pair<std::string, std::string>>;

// Adjacency in the traversal direction of the selector.
std::map<std::string, std::set<std::string>> adjacency(const Pairs& pairs, bool inverse) {
    std::map<std::string, std::set<std::string>> adj;
    for (const auto& [src, dst] : pairs) {
        if (inverse)
            adj[dst].insert(src);
        else
            adj[src].insert(dst);
    }
    return adj;
}

std::map<std::string, std::set<std::string>> selector_adjacency(const RelationSet& relations,
                                                                RelationSelector selector) {
    Pairs pairs;
    if (selector.relation == RelationKind::Uses || selector.relation == RelationKind::Combined)
        pairs.insert(relations.uses.begin(), relations.uses.end());
    if (selector.relation == RelationKind::Calls || selector.relation == RelationKind::Combined)
        pairs.insert(relations.calls.begin(), relations.calls.end());
    return adjacency(pairs, selector.inverse);
}

void require_known(const RelationSet& relations, const std::set<std::string>& ids) {
    for (const auto& id : ids)
        if (!relations.has(id)) throw UnknownId("unknown entity id '" + id + "'");
}

// Call-graph reachability in the traversal direction (one or more steps).
std::set<std::string> call_reach(const std::map<std::string, std::set<std::string>>& call_adj,
                                 const std::string& start) {
    std::set<std::string> seen;
    std::vector<std::string> frontier{start};
    while (!frontier.empty()) {
        std::string cur = std::move(frontier.back());
        frontier.pop_back();
        auto it = call_adj.find(cur);
        if (it == call_adj.end()) continue;
        for (const auto& next : it->second)
            if (seen.insert(next).second) frontier.push_back(next);
    }
    return seen;
}

}  // namespace

std::set<std::string> image(const RelationSet& relations, RelationSelector selector,
                            const std::set<std::string>& sources) {
    require_known(relations, sources);
    const auto adj = selector_adjacency(relations, selector);
    std::set<std::string> out;
    for (const auto& src : sources) {
        auto it = adj.find(src);
        if (it == adj.end()) continue;
        out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

TransitiveImage transitive_image(const RelationSet& relations, RelationSelector selector,
                                 const std::set<std::string>& sources) {
    require_known(relations, sources);
    const auto direct = image(relations, selector, sources);
    const auto call_adj = adjacency(relations.calls, selector.inverse);
    const auto sel_adj = selector_adjacency(relations, selector);

    TransitiveImage out;
    if (!selector.inverse) {
        // source -calls..-> n -selector-> target
        for (const auto& src : sources) {
            for (const auto& via : call_reach(call_adj, src)) {
                auto it = sel_adj.find(via);
                if (it == sel_adj.end()) continue;
                for (const auto& target : it->second) {
                    if (direct.count(target)) continue;
                    out.targets.insert(target);
                    out.witnesses.push_back(Witness{src, via, target});
                }
            }
        }
    } else {
        // source -selector'-> n <-..calls- target (mirror of the forward walk)
        for (const auto& src : sources) {
            auto it = sel_adj.find(src);
            if (it == sel_adj.end()) continue;
            for (const auto& via : it->second) {
                for (const auto& target : call_reach(call_adj, via)) {
                    if (direct.count(target)) continue;
                    out.targets.insert(target);
                    out.witnesses.push_back(Witness{src, via, target});
                }
            }
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    out.witnesses.erase(std::unique(out.witnesses.begin(), out.witnesses.end()),
                        out.witnesses.end());
    return out;
}

DependencyEdge classify(const RelationSet& relations, RelationSelector selector,
                        const std::set<std::string>& sources,
                        const std::set<std::string>& targets) {
    if (sources.empty() || targets.empty())
        throw std::invalid_argument("classify requires nonempty source and target sets");
    for (const auto& id : sources)
        if (targets.count(id))
            throw std::invalid_argument("classify requires disjoint source and target sets");
    require_known(relations, sources);
    require_known(relations, targets);

    const std::set<std::string> direct = image(relations, selector, sources);
    TransitiveImage trans = transitive_image(relations, selector, sources);

    std::set<std::string> full = direct;
    full.insert(trans.targets.begin(), trans.targets.end());

    auto intersects = [](const std::set<std::string>& a, const std::set<std::string>& b) {
        for (const auto& x : a)
            if (b.count(x)) return true;
        return false;
    };
    auto subset = [](const std::set<std::string>& a, const std::set<std::string>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };

    DependencyEdge edge;
    edge.sources.assign(sources.begin(), sources.end());
    edge.targets.assign(targets.begin(), targets.end());
    edge.selector = selector;

    const bool trans_hits = intersects(trans.targets, targets);
    if (!direct.empty() && direct == targets) {
        edge.kind = DependencyKind::ExclusiveDirect;
    } else if (subset(targets, direct) && targets != direct) {
        edge.kind = DependencyKind::SharedDirect;
    } else if (trans_hits && full == targets) {
        edge.kind = DependencyKind::ExclusiveTransitive;
    } else if (trans_hits && subset(targets, full) && targets != full) {
        edge.kind = DependencyKind::SharedTransitive;
    } else if (!intersects(full, targets)) {
        edge.kind = DependencyKind::None;
    } else {
        edge.kind = DependencyKind::NotComparable;
    }

    if (edge.kind == DependencyKind::ExclusiveTransitive ||
        edge.kind == DependencyKind::SharedTransitive) {
        for (auto& w : trans.witnesses)
            if (targets.count(w.target)) edge.witnesses.push_back(std::move(w));
    }
    return edge;
}

namespace {

// Full (direct plus transitive) image used by the edge catalogue. Calls-mode
// edges stay direct: chains of calls are the skeleton view's business.
std::set<std::string> full_image(const RelationSet& relations, RelationSelector selector,
                                 const std::string& id) {
    std::set<std::string> out = image(relations, selector, {id});
    if (selector.relation == RelationKind::Uses) {
        auto trans = transitive_image(relations, selector, {id});
        out.insert(trans.targets.begin(), trans.targets.end());
    }
    return out;
}

}  // namespace

std::vector<DependencyEdge> classify_all(const RelationSet& relations, bool include_dead) {
    std::vector<DependencyEdge> edges;
    std::set<std::pair<std::string, std::string>> emitted;  // (sources, targets) joined

    auto key_of = [](const std::set<std::string>& sources, const std::set<std::string>& targets) {
        std::string s;
        std::string t;
        for (const auto& id : sources) { s += id; s += '\x1f'; }
        for (const auto& id : targets) { t += id; t += '\x1f'; }
        return std::make_pair(s, t);
    };

    auto run_direction = [&](RelationSelector selector,
                             const std::vector<std::string>& source_universe,
                             const std::vector<std::string>& counterpart_universe) {
        std::map<std::set<std::string>, std::set<std::string>> groups;  // image -> sources
        for (const auto& id : source_universe) {
            auto img = full_image(relations, selector, id);
            if (!img.empty()) groups[img].insert(id);
        }

        for (const auto& [img, srcs] : groups) {
            auto key = key_of(srcs, img);
            if (!emitted.insert(key).second) continue;
            DependencyEdge edge = classify(relations, selector, srcs, img);
            edge.aggregate = srcs.size() > 1;
            edges.push_back(std::move(edge));
        }

        // Whole-class aggregate: only when the group images are pairwise
        // disjoint and together cover the live counterpart entities.
        if (groups.size() < 2) return;
        std::set<std::string> union_img;
        std::set<std::string> all_sources;
        std::size_t total = 0;
        for (const auto& [img, srcs] : groups) {
            total += img.size();
            union_img.insert(img.begin(), img.end());
            all_sources.insert(srcs.begin(), srcs.end());
        }
        const bool disjoint = union_img.size() == total;
        if (!disjoint) return;

        std::set<std::string> universe;
        for (const auto& id : counterpart_universe) {
            if (include_dead) {
                universe.insert(id);
            } else {
                RelationSelector reverse = selector;
                reverse.inverse = !reverse.inverse;
                if (!full_image(relations, reverse, id).empty()) universe.insert(id);
            }
        }
        if (universe.empty() || !std::includes(union_img.begin(), union_img.end(),
                                               universe.begin(), universe.end()))
            return;
        for (const auto& id : all_sources)
            if (union_img.count(id)) return;  // call cycles: not classifiable as one edge

        auto key = key_of(all_sources, union_img);
        if (!emitted.insert(key).second) return;
        DependencyEdge edge = classify(relations, selector, all_sources, union_img);
        edge.aggregate = true;
        edges.push_back(std::move(edge));
    };

    const std::vector<std::string> methods = relations.method_ids();
    const std::vector<std::string> attributes = relations.attribute_ids();

    run_direction(RelationSelector{RelationKind::Uses, false}, methods, attributes);
    run_direction(RelationSelector{RelationKind::Uses, true}, attributes, methods);
    run_direction(RelationSelector{RelationKind::Calls, false}, methods, methods);

    std::sort(edges.begin(), edges.end(), [](const DependencyEdge& a, const DependencyEdge& b) {
        if (a.selector != b.selector) return a.selector < b.selector;
        if (a.sources != b.sources) return a.sources < b.sources;
        return a.targets < b.targets;
    });
    return edges;
}

}  // namespace xray

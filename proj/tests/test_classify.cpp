#include <doctest.h>

#include <random>

#include "xray/classify.hpp"
#include "xray/errors.hpp"

#include "helpers.hpp"

using namespace xray;
using xray::test::brute_classify;
using xray::test::brute_images;
using xray::test::fixture_relations;
using xray::test::has_edge;
using xray::test::random_relations;

namespace {

std::set<std::string> S(std::initializer_list<std::string> ids) { return ids; }

RelationSet make_relations(std::vector<std::pair<std::string, EntityKind>> entities,
                           std::set<std::pair<std::string, std::string>> uses,
                           std::set<std::pair<std::string, std::string>> calls) {
    RelationSet rel;
    for (auto& [id, kind] : entities) {
        Entity e;
        e.id = id;
        e.kind = kind;
        rel.entities.push_back(e);
    }
    std::sort(rel.entities.begin(), rel.entities.end(),
              [](const Entity& a, const Entity& b) { return a.id < b.id; });
    rel.uses = std::move(uses);
    rel.calls = std::move(calls);
    rel.validate();
    return rel;
}

constexpr RelationSelector kUses{RelationKind::Uses, false};
constexpr RelationSelector kInverseUses{RelationKind::Uses, true};
constexpr RelationSelector kCalls{RelationKind::Calls, false};

}  // namespace

TEST_CASE("image is the union of direct targets") {
    RelationSet rel = fixture_relations("Overload.java");
    CHECK(image(rel, kUses, S({"test(int,int)"})) == S({"a", "b"}));
    CHECK(image(rel, kUses, {}).empty());
    CHECK(image(rel, kInverseUses, S({"a"})) == S({"test(int)", "test(int,int)"}));

    RelationSet inherit = fixture_relations("Inheritance.java", "B");
    CHECK(image(inherit, kUses, S({"showxy()"})) == S({"x", "y"}));

    CHECK_THROWS_AS(image(rel, kUses, S({"ghost"})), UnknownId);
}

TEST_CASE("transitive image composes calls with uses and excludes direct targets") {
    RelationSet rel = make_relations(
        {{"P", EntityKind::Method}, {"Q", EntityKind::Method}, {"b", EntityKind::Attribute}},
        {{"Q", "b"}}, {{"P", "Q"}});
    auto t = transitive_image(rel, kUses, S({"P"}));
    CHECK(t.targets == S({"b"}));
    REQUIRE(t.witnesses.size() == 1);
    CHECK(t.witnesses[0] == Witness{"P", "Q", "b"});

    // No outgoing calls: empty transitive image.
    auto none = transitive_image(rel, kUses, S({"Q"}));
    CHECK(none.targets.empty());
    CHECK(none.witnesses.empty());

    // A directly used attribute never reappears transitively.
    RelationSet both = make_relations(
        {{"P", EntityKind::Method}, {"Q", EntityKind::Method}, {"b", EntityKind::Attribute}},
        {{"P", "b"}, {"Q", "b"}}, {{"P", "Q"}});
    CHECK(transitive_image(both, kUses, S({"P"})).targets.empty());
}

TEST_CASE("transitive image follows call chains") {
    RelationSet rel = make_relations({{"P", EntityKind::Method},
                                      {"Q", EntityKind::Method},
                                      {"R", EntityKind::Method},
                                      {"b", EntityKind::Attribute}},
                                     {{"R", "b"}}, {{"P", "Q"}, {"Q", "R"}});
    auto t = transitive_image(rel, kUses, S({"P"}));
    CHECK(t.targets == S({"b"}));
    REQUIRE(t.witnesses.size() == 1);
    CHECK(t.witnesses[0].via == "R");  // the last intermediate before the uses step

    // Inverse: from the attribute back to every calling method.
    auto inv = transitive_image(rel, kInverseUses, S({"b"}));
    CHECK(inv.targets == S({"P", "Q"}));
}

TEST_CASE("abstraction fixture: the constructor dependency classifies exclusive") {
    RelationSet rel = fixture_relations("Poly.java");
    DependencyEdge edge = classify(rel, kCalls, S({"add(Poly)"}), S({"Poly()"}));
    const bool exclusive = edge.kind == DependencyKind::ExclusiveDirect ||
                           edge.kind == DependencyKind::ExclusiveTransitive;
    CHECK(exclusive);
}

TEST_CASE("classify covers the five kinds") {
    RelationSet overload = fixture_relations("Overload.java");
    CHECK(classify(overload, kInverseUses, S({"b"}), S({"test(int,int)"})).kind ==
          DependencyKind::ExclusiveDirect);
    CHECK(classify(overload, kInverseUses, S({"a"}), S({"test(int)", "test(int,int)"})).kind ==
          DependencyKind::ExclusiveDirect);

    // A method with no events depends on nothing.
    RelationSet idle = make_relations(
        {{"m", EntityKind::Method}, {"attr", EntityKind::Attribute}}, {}, {});
    CHECK(classify(idle, kUses, S({"m"}), S({"attr"})).kind == DependencyKind::None);

    // Shared direct: the target set is a strict subset of the image.
    CHECK(classify(overload, kUses, S({"test(int,int)"}), S({"a"})).kind ==
          DependencyKind::SharedDirect);

    RelationSet trans = make_relations({{"P", EntityKind::Method},
                                        {"Q", EntityKind::Method},
                                        {"a", EntityKind::Attribute},
                                        {"b", EntityKind::Attribute}},
                                       {{"P", "a"}, {"Q", "b"}}, {{"P", "Q"}});
    DependencyEdge et = classify(trans, kUses, S({"P"}), S({"a", "b"}));
    CHECK(et.kind == DependencyKind::ExclusiveTransitive);
    REQUIRE(et.witnesses.size() == 1);
    CHECK(et.witnesses[0] == Witness{"P", "Q", "b"});

    DependencyEdge st = classify(trans, kUses, S({"P"}), S({"b"}));
    CHECK(st.kind == DependencyKind::SharedTransitive);

    // Target set straddling the image and unrelated entities fits no kind.
    RelationSet wide = make_relations({{"P", EntityKind::Method},
                                       {"a", EntityKind::Attribute},
                                       {"c", EntityKind::Attribute}},
                                      {{"P", "a"}}, {});
    CHECK(classify(wide, kUses, S({"P"}), S({"a", "c"})).kind ==
          DependencyKind::NotComparable);
}

TEST_CASE("classify validates its preconditions") {
    RelationSet rel = fixture_relations("Overload.java");
    CHECK_THROWS_AS(classify(rel, kUses, {}, S({"a"})), std::invalid_argument);
    CHECK_THROWS_AS(classify(rel, kUses, S({"test(int)"}), {}), std::invalid_argument);
    CHECK_THROWS_AS(classify(rel, kInverseUses, S({"a"}), S({"a", "test(int)"})),
                    std::invalid_argument);
    CHECK_THROWS_AS(classify(rel, kUses, S({"ghost"}), S({"a"})), UnknownId);
}

TEST_CASE("classify_all on the overloading fixture lists both attribute relations") {
    RelationSet rel = fixture_relations("Overload.java");
    auto edges = classify_all(rel);
    CHECK(has_edge(edges, {"a"}, {"test(int)", "test(int,int)"},
                   DependencyKind::ExclusiveDirect));
    CHECK(has_edge(edges, {"b"}, {"test(int,int)"}, DependencyKind::ExclusiveDirect));
    CHECK(has_edge(edges, {"test(int)"}, {"a"}, DependencyKind::ExclusiveDirect));
    CHECK(has_edge(edges, {"test(int,int)"}, {"a", "b"}, DependencyKind::ExclusiveDirect));
    // Images overlap, so no whole-class aggregate forms.
    CHECK(edges.size() == 4);
    for (const auto& e : edges) CHECK(!e.aggregate);
}

TEST_CASE("classify_all aggregates identical images and the whole class") {
    RelationSet rel = fixture_relations("Inheritance.java", "B");
    auto edges = classify_all(rel);
    CHECK(has_edge(edges, {"x", "y"}, {"showxy()"}, DependencyKind::ExclusiveDirect));
    CHECK(has_edge(edges, {"z"}, {"showz()"}, DependencyKind::ExclusiveDirect));
    CHECK(has_edge(edges, {"x", "y", "z"}, {"showxy()", "showz()"},
                   DependencyKind::ExclusiveDirect));
    for (const auto& e : edges)
        if (e.sources.size() > 1) CHECK(e.aggregate);
}

TEST_CASE("classify_all on the exception fixture pairs the block with both fields") {
    RelationSet rel = fixture_relations("MyException.java");
    auto edges = classify_all(rel);
    CHECK(has_edge(edges, {"a", "d"}, {"main.try1"}, DependencyKind::ExclusiveDirect));
    CHECK(has_edge(edges, {"main.try1"}, {"a", "d"}, DependencyKind::ExclusiveDirect));
}

TEST_CASE("classify_all on the overriding fixture keeps the merged edge") {
    RelationSet rel = fixture_relations("Override.java", "B");
    auto edges = classify_all(rel);
    CHECK(has_edge(edges, {"show()#merged"}, {"i", "j", "k"},
                   DependencyKind::ExclusiveDirect));
}

TEST_CASE("empty relation set classifies to an empty edge list") {
    RelationSet rel;
    CHECK(classify_all(rel).empty());
}

TEST_CASE("classification agrees with the brute-force case evaluator") {
    std::mt19937 rng(20240811);
    for (int round = 0; round < 40; ++round) {
        RelationSet rel = random_relations(rng, 4, 4, 0.35, 0.25);
        const auto methods = rel.method_ids();
        const auto attributes = rel.attribute_ids();
        const std::size_t m = methods.size();
        const std::size_t a = attributes.size();
        for (std::uint32_t em = 1; em < (1u << m); ++em) {
            for (std::uint32_t am = 1; am < (1u << a); ++am) {
                std::set<std::string> E;
                std::set<std::string> M;
                for (std::size_t i = 0; i < m; ++i)
                    if (em & (1u << i)) E.insert(methods[i]);
                for (std::size_t i = 0; i < a; ++i)
                    if (am & (1u << i)) M.insert(attributes[i]);

                auto [direct, transitive] = brute_images(rel, false, E);
                int matches = 0;
                DependencyKind expected = brute_classify(direct, transitive, M, &matches);
                CHECK(matches <= 1);  // the five cases are mutually exclusive
                CHECK(classify(rel, kUses, E, M).kind == expected);
            }
        }
    }
}

TEST_CASE("inverse classification agrees with the brute-force evaluator") {
    std::mt19937 rng(5150);
    for (int round = 0; round < 25; ++round) {
        RelationSet rel = random_relations(rng, 4, 3, 0.4, 0.3);
        const auto methods = rel.method_ids();
        const auto attributes = rel.attribute_ids();
        for (std::uint32_t em = 1; em < (1u << attributes.size()); ++em) {
            for (std::uint32_t mm = 1; mm < (1u << methods.size()); ++mm) {
                std::set<std::string> E;
                std::set<std::string> M;
                for (std::size_t i = 0; i < attributes.size(); ++i)
                    if (em & (1u << i)) E.insert(attributes[i]);
                for (std::size_t i = 0; i < methods.size(); ++i)
                    if (mm & (1u << i)) M.insert(methods[i]);
                auto [direct, transitive] = brute_images(rel, true, E);
                CHECK(classify(rel, kInverseUses, E, M).kind ==
                      brute_classify(direct, transitive, M));
            }
        }
    }
}

TEST_CASE("transitive targets never shrink when a calls edge is added") {
    std::mt19937 rng(31337);
    for (int round = 0; round < 30; ++round) {
        RelationSet rel = random_relations(rng, 5, 4, 0.3, 0.2);
        const auto methods = rel.method_ids();
        if (methods.size() < 2) continue;
        std::uniform_int_distribution<std::size_t> pick(0, methods.size() - 1);
        std::size_t from = pick(rng);
        std::size_t to = pick(rng);
        if (from == to) continue;

        std::set<std::string> sources{methods[pick(rng)]};
        auto before = transitive_image(rel, kUses, sources).targets;
        RelationSet grown = rel;
        grown.calls.insert({methods[from], methods[to]});
        auto after = transitive_image(grown, kUses, sources).targets;
        CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    }
}

TEST_CASE("kind None means no direct or composed path into the targets") {
    std::mt19937 rng(64);
    for (int round = 0; round < 30; ++round) {
        RelationSet rel = random_relations(rng, 4, 4, 0.3, 0.3);
        const auto methods = rel.method_ids();
        const auto attributes = rel.attribute_ids();
        std::uniform_int_distribution<std::size_t> pm(0, methods.size() - 1);
        std::uniform_int_distribution<std::size_t> pa(0, attributes.size() - 1);
        std::set<std::string> E{methods[pm(rng)]};
        std::set<std::string> M{attributes[pa(rng)]};
        auto [direct, transitive] = brute_images(rel, false, E);
        std::set<std::string> reachable = direct;
        reachable.insert(transitive.begin(), transitive.end());
        bool touches = false;
        for (const auto& t : M)
            if (reachable.count(t)) touches = true;
        CHECK((classify(rel, kUses, E, M).kind == DependencyKind::None) == !touches);
    }
}

TEST_CASE("aggregated edges carry the union of identical member images") {
    std::mt19937 rng(2024);
    for (int round = 0; round < 20; ++round) {
        RelationSet rel = random_relations(rng, 5, 5, 0.3, 0.2);
        for (const auto& edge : classify_all(rel)) {
            if (!edge.aggregate) continue;
            // Whole-class aggregates union disjoint group images; identity
            // groups share one image. Either way the edge's targets equal the
            // union over member full images.
            std::set<std::string> expected;
            for (const auto& src : edge.sources) {
                auto img = image(rel, edge.selector, {src});
                if (edge.selector.relation == RelationKind::Uses) {
                    auto t = transitive_image(rel, edge.selector, {src});
                    img.insert(t.targets.begin(), t.targets.end());
                }
                expected.insert(img.begin(), img.end());
            }
            CHECK(std::vector<std::string>(expected.begin(), expected.end()) == edge.targets);
        }
    }
}

TEST_CASE("classify_all ordering is stable") {
    RelationSet rel = fixture_relations("Inheritance.java", "B");
    auto a = classify_all(rel);
    auto b = classify_all(rel);
    CHECK(a == b);
}

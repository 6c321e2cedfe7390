#include <doctest.h>

#include <algorithm>

#include "xray/errors.hpp"
#include "xray/hierarchy.hpp"
#include "xray/parser.hpp"

#include "helpers.hpp"

using namespace xray;
using xray::test::fixture_path;
using xray::test::read_file;

namespace {

std::vector<std::string> field_ids(const Hierarchy::ClassView& view) {
    std::vector<std::string> out;
    for (const auto& f : view.fields) out.push_back(f.attr_id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> slot_signatures(const Hierarchy::ClassView& view) {
    std::vector<std::string> out;
    for (const auto& s : view.method_slots) out.push_back(s.signature);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("inheritance fixture: B sees x, y, z and both show methods") {
    SourceUnit unit =
        parse_source("Inheritance.java", read_file(fixture_path("Inheritance.java")));
    Hierarchy h = resolve_hierarchy(unit);
    const auto& b = h.view("B");
    CHECK(field_ids(b) == std::vector<std::string>{"x", "y", "z"});
    CHECK(slot_signatures(b) == std::vector<std::string>{"showxy()", "showz()"});
    CHECK(b.chain == std::vector<std::string>{"B", "A"});
    CHECK(h.override_pairs().empty());
}

TEST_CASE("single class resolves to its own members") {
    SourceUnit unit = parse_source("x", "class S { int v; void m() { v = 1; } }");
    Hierarchy h = resolve_hierarchy(unit);
    const auto& s = h.view("S");
    CHECK(field_ids(s) == std::vector<std::string>{"v"});
    CHECK(slot_signatures(s) == std::vector<std::string>{"m()"});
    CHECK(s.chain == std::vector<std::string>{"S"});
}

TEST_CASE("cyclic extends chains are rejected") {
    SourceUnit unit = parse_source("x", "class A extends B { } class B extends A { }");
    CHECK_THROWS_AS(resolve_hierarchy(unit), CycleError);
}

TEST_CASE("unknown superclass is an error unless declared external") {
    SourceUnit unit = parse_source("x", "class A extends Missing { int v; }");
    CHECK_THROWS_AS(resolve_hierarchy(unit), UnknownSuperclass);

    Hierarchy h = resolve_hierarchy(unit, /*allow_external_super=*/true);
    const auto& a = h.view("A");
    CHECK(a.chain == std::vector<std::string>{"A"});
    CHECK(field_ids(a) == std::vector<std::string>{"v"});
}

TEST_CASE("override pairs need matching erased signatures") {
    SourceUnit unit =
        parse_source("Override.java", read_file(fixture_path("Override.java")));
    Hierarchy h = resolve_hierarchy(unit);
    REQUIRE(h.override_pairs().size() == 1);
    const OverridePair& pair = h.override_pairs()[0];
    CHECK(pair.child_class == "B");
    CHECK(pair.ancestor_class == "A");
    CHECK(pair.signature == "show()");

    const auto& b = h.view("B");
    const auto show = std::find_if(b.method_slots.begin(), b.method_slots.end(),
                                   [](const auto& s) { return s.signature == "show()"; });
    REQUIRE(show != b.method_slots.end());
    REQUIRE(show->impls.size() == 2);
    CHECK(show->impls[0].declared_in == "A");  // root-first
    CHECK(show->impls[1].declared_in == "B");
}

TEST_CASE("parameter names do not affect override detection") {
    SourceUnit unit = parse_source("x", R"(
class A { void m(int a) {} void n(int a) {} }
class B extends A { void m(int other) {} void n(int a, int b) {} }
)");
    Hierarchy h = resolve_hierarchy(unit);
    REQUIRE(h.override_pairs().size() == 1);
    CHECK(h.override_pairs()[0].signature == "m(int)");  // n() arities differ
}

TEST_CASE("shadowed inherited fields get a #super id") {
    SourceUnit unit =
        parse_source("x", "class A { int x; } class B extends A { int x; void m() {} }");
    Hierarchy h = resolve_hierarchy(unit);
    const auto& b = h.view("B");
    CHECK(field_ids(b) == std::vector<std::string>{"x", "x#super"});
    // The leaf declaration owns the plain name.
    for (const auto& f : b.fields) {
        if (f.attr_id == "x") CHECK(f.declared_in == "B");
        if (f.attr_id == "x#super") CHECK(f.declared_in == "A");
    }
}

TEST_CASE("field_owner walks the chain") {
    SourceUnit unit =
        parse_source("x", "class A { int x; } class B extends A { int y; void m() {} }");
    Hierarchy h = resolve_hierarchy(unit);
    CHECK(h.field_owner("B", "x") == "A");
    CHECK(h.field_owner("B", "y") == "B");
    CHECK(h.field_owner("B", "z").empty());
    CHECK(h.field_owner("A", "y").empty());
}

TEST_CASE("unknown class lookups throw") {
    SourceUnit unit = parse_source("x", "class A { }");
    Hierarchy h = resolve_hierarchy(unit);
    CHECK_THROWS_AS(h.view("Nope"), UnknownClass);
}

TEST_CASE("three-level chains resolve root-first override groups") {
    SourceUnit unit = parse_source("x", R"(
class A { int p; void m() { p = 1; } }
class B extends A { int q; void m() { q = 1; } }
class C extends B { int r; void m() { r = 1; } }
)");
    Hierarchy h = resolve_hierarchy(unit);
    const auto& c = h.view("C");
    REQUIRE(c.method_slots.size() == 1);
    REQUIRE(c.method_slots[0].impls.size() == 3);
    CHECK(c.method_slots[0].impls[0].declared_in == "A");
    CHECK(c.method_slots[0].impls[2].declared_in == "C");
    CHECK(h.override_pairs().size() == 2);  // (B,A) and (C,B), deduplicated across views
}

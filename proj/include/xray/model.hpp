#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xray/span.hpp"

namespace xray {

enum class EventKind { FieldRead, FieldWrite, SelfCall, CtorCall, ParamRead, LocalOp };

std::string_view to_string(EventKind kind);

/// One body effect in source order. `target` is a field name (FieldRead /
/// FieldWrite), a resolved method signature (SelfCall), a class name
/// (CtorCall) or a raw name (ParamRead / LocalOp).
struct Event {
    EventKind kind = EventKind::LocalOp;
    std::string target;
    Span span;
    int arity = -1;  // CtorCall argument count

    bool operator==(const Event&) const = default;
};

struct TryBlock {
    std::string id;  // unique within the method: "try1", "try2", ...
    std::vector<Event> body_events;
    std::vector<Event> handler_events;
    std::string exception_type;
    Span span;  // whole try/catch statement

    bool operator==(const TryBlock&) const = default;
};

struct Param {
    std::string name;  // may be empty (declarations without parameter names)
    std::string type;

    bool operator==(const Param&) const = default;
};

struct FieldDecl {
    std::string name;
    std::string declared_type;
    Span span;

    bool operator==(const FieldDecl&) const = default;
};

struct MethodDecl {
    std::string name;
    std::vector<Param> params;
    std::string return_type;  // empty for constructors
    bool is_constructor = false;
    bool has_body = false;
    std::vector<Event> body;  // all events in source order, try-block events included
    std::vector<TryBlock> try_blocks;
    Span span;

    /// Erased signature: name plus parameter types, e.g. "test(int,int)".
    std::string signature() const;
    std::size_t arity() const { return params.size(); }

    bool operator==(const MethodDecl&) const = default;
};

struct ClassModel {
    std::string name;
    std::optional<std::string> superclass;
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;  // constructors included, flagged
    bool is_abstract = false;
    Span span;

    const FieldDecl* find_field(std::string_view field_name) const;

    bool operator==(const ClassModel&) const = default;
};

struct SourceUnit {
    std::string path;
    std::string text;
    std::vector<ClassModel> classes;

    const ClassModel* find_class(std::string_view class_name) const;

    bool operator==(const SourceUnit&) const = default;
};

}  // namespace xray

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "xray/span.hpp"

namespace xray {

/// Base class for failures raised while analysing source input. Carries the
/// error category, the offending byte span and, once known, the file path.
class AnalysisError : public std::runtime_error {
public:
    AnalysisError(std::string kind, const std::string& message, Span where = {})
        : std::runtime_error(message), kind_(std::move(kind)), where_(where) {}

    const std::string& kind() const { return kind_; }
    Span where() const { return where_; }

    const std::string& path() const { return path_; }
    void set_path(std::string path) { path_ = std::move(path); }

private:
    std::string kind_;
    Span where_;
    std::string path_;
};

struct LexError : AnalysisError {
    LexError(const std::string& message, std::size_t offset)
        : AnalysisError("LexError", message, Span{offset, offset + 1}) {}
};

struct ParseError : AnalysisError {
    ParseError(const std::string& message, Span where)
        : AnalysisError("ParseError", message, where) {}
};

struct DuplicateMember : AnalysisError {
    DuplicateMember(const std::string& message, Span where)
        : AnalysisError("DuplicateMember", message, where) {}
};

struct CycleError : AnalysisError {
    explicit CycleError(const std::string& message) : AnalysisError("CycleError", message) {}
};

struct UnknownSuperclass : AnalysisError {
    explicit UnknownSuperclass(const std::string& message)
        : AnalysisError("UnknownSuperclass", message) {}
};

struct UnknownClass : AnalysisError {
    explicit UnknownClass(const std::string& message) : AnalysisError("UnknownClass", message) {}
};

struct UnknownId : AnalysisError {
    explicit UnknownId(const std::string& message) : AnalysisError("UnknownId", message) {}
};

struct InconsistentInputs : AnalysisError {
    explicit InconsistentInputs(const std::string& message)
        : AnalysisError("InconsistentInputs", message) {}
};

struct CxtFormatError : AnalysisError {
    explicit CxtFormatError(const std::string& message)
        : AnalysisError("CxtFormatError", message) {}
};

/// Problems the user can fix on the command line (bad paths, ambiguous
/// focus class). The CLI maps these to exit code 2.
struct UsageError : AnalysisError {
    explicit UsageError(const std::string& message) : AnalysisError("UsageError", message) {}
};

}  // namespace xray

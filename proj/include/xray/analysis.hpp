#pragma once

#include <string>
#include <utility>
#include <vector>

#include "xray/hierarchy.hpp"
#include "xray/model.hpp"
#include "xray/views.hpp"

namespace xray {

struct AnalysisOptions {
    std::string focus_class;  // empty: default to the sole non-driver class
    RelationKind context_mode = RelationKind::Uses;
    bool include_dead = false;
    bool allow_external_super = false;
    double core_coverage = 1.0;
};

/// A driver class only stages a scenario: its sole method is `main` and it
/// declares no fields. Drivers never become the default focus class.
bool is_driver_class(const ClassModel& model);

/// Parsed inputs plus the finished report. The hierarchy borrows the units;
/// the report is self-contained.
struct Analysis {
    std::vector<SourceUnit> units;
    Hierarchy hierarchy;
    std::string focus_class;
    XRayReport report;

    Analysis() = default;
    Analysis(const Analysis&) = delete;
    Analysis& operator=(const Analysis&) = delete;
    Analysis(Analysis&&) = default;
    Analysis& operator=(Analysis&&) = default;
};

/// Full pipeline over (path, source text) pairs.
Analysis analyze_sources(const std::vector<std::pair<std::string, std::string>>& sources,
                         const AnalysisOptions& options = {});

/// Reads the files and runs analyze_sources. Unreadable paths raise
/// UsageError.
Analysis analyze_files(const std::vector<std::string>& paths,
                       const AnalysisOptions& options = {});

}  // namespace xray

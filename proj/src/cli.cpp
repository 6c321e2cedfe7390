#include "xray/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "xray/analysis.hpp"
#include "xray/errors.hpp"
#include "xray/fca.hpp"
#include "xray/report.hpp"

namespace xray {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitUsage = 2;

std::string describe(const AnalysisError& e) {
    std::string out;
    if (!e.path().empty()) {
        out += e.path();
        const Span where = e.where();
        if (where.end > where.begin || where.begin > 0) {
            std::ifstream in(e.path(), std::ios::binary);
            if (in) {
                std::string text((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
                const LineCol lc = line_col_at(text, where.begin);
                out += ":" + std::to_string(lc.line) + ":" + std::to_string(lc.col);
            }
        }
        out += ": ";
    }
    out += e.kind();
    out += ": ";
    out += e.what();
    return out;
}

bool color_enabled() {
    const char* env = std::getenv("XRAY_COLOR");
    return env && std::string(env) == "1";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"X-rays a class: member relations, formal concepts, dependency forms"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Analyze source files and print a report");
    std::vector<std::string> files;
    std::string focus;
    std::string format = "text";
    std::vector<std::string> view_filter;
    std::string mode = "uses";
    bool include_dead = false;
    bool allow_external_super = false;
    bool reduced_labels = false;
    std::string export_cxt;

    analyze->add_option("files", files, "input .java source files")->required()->expected(-1);
    analyze->add_option("--class", focus, "class to analyze (default: the sole non-driver class)");
    analyze->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    analyze->add_option("--view", view_filter, "restrict text output to these sections")
        ->check(CLI::IsMember({"state", "clusters", "skeleton", "deps", "concepts", "all"}));
    analyze->add_option("--mode", mode, "relation behind the concept lattice")
        ->check(CLI::IsMember({"uses", "calls", "combined"}));
    analyze->add_flag("--include-dead", include_dead,
                      "keep unused members in dependency universes");
    analyze->add_flag("--allow-external-super", allow_external_super,
                      "treat unknown superclasses as empty external classes");
    analyze->add_flag("--reduced-labels", reduced_labels, "reduced concept labels in DOT output");
    analyze->add_option("--export-cxt", export_cxt, "write the formal context to a .cxt file");

    std::vector<const char*> argv;
    argv.push_back("xray");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    for (const auto& file : files) {
        if (!std::filesystem::exists(file)) {
            err << "error: no such file: " << file << "\n";
            return kExitUsage;
        }
    }

    AnalysisOptions options;
    options.focus_class = focus;
    options.include_dead = include_dead;
    options.allow_external_super = allow_external_super;
    if (mode == "calls") options.context_mode = RelationKind::Calls;
    else if (mode == "combined") options.context_mode = RelationKind::Combined;

    try {
        Analysis analysis = analyze_files(files, options);
        const XRayReport& report = analysis.report;

        if (report.context.incidence_count() == 0)
            err << "warning: empty context (no incidences in "
                << to_string(report.context_mode) << " mode)\n";

        if (!export_cxt.empty()) {
            std::ofstream cxt(export_cxt, std::ios::binary);
            if (!cxt) {
                err << "error: cannot write '" << export_cxt << "'\n";
                return kExitUsage;
            }
            fca::write_cxt(cxt, report.context);
        }

        if (format == "json") {
            out << emit_json(report);
        } else if (format == "dot") {
            out << emit_dot(report, reduced_labels);
        } else {
            std::set<std::string> sections(view_filter.begin(), view_filter.end());
            out << emit_text(report, sections, color_enabled());
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const AnalysisError& e) {
        err << "error: " << describe(e) << "\n";
        return kExitAnalysis;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace xray

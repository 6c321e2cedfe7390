#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xray {

/// Command-line entry point. Exit codes: 0 success, 1 analysis error
/// (lex/parse/resolve failures, reported with source positions), 2 usage
/// error (bad flags, missing files, ambiguous focus class).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace xray

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace microasp::cli {

enum ExitCode : int {
    ok = 0,
    usage = 1,
    parse_error = 2,
    validation = 3,
    unsupported = 4,
    satisfiable = 10,
    unsatisfiable = 20,
};

/// Runs one command line (without the program name). `in` backs the `-`
/// file argument. Errors go to `err` as a single `error: ...` line.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace microasp::cli

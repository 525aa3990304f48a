#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdtk::cli {

// Runs the command line `args` (without the program name). Output goes to
// `out` unless --out names a file; diagnostics go to `err`.
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hdtk::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oqa::cli {

/// Runs one command line (without the program name). Primary output goes to
/// `out` (or the --output file), errors to `err` as
/// {"error": {"kind", "message"}}. Returns 0 on success, 1 when a verdict
/// fails and 2 on invalid input.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace oqa::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace timelot::cli {

/// Run the command line given argv (program name excluded). Primary output
/// goes to `out` (or the --out path), diagnostics to `err`.
/// Exit codes: 0 success, 1 usage/validation error, 2 inconsistent audit
/// findings or axiom failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace timelot::cli

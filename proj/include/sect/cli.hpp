#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sect {

/// Batch command-line driver. `args` excludes the program name. Writes the
/// report to `out` and diagnostics to `err`. Exit codes: 0 positive verdict,
/// 1 negative verdict, 2 undecidable / budget or precision exhausted,
/// 3 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sect

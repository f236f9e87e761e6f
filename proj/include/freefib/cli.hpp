#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freefib::cli {

/// Run the command-line surface. `args` excludes the program name.
/// Exit codes: 0 success, 1 domain error (one-line "error: <kind>: ..."
/// on err), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace freefib::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limid::cli {

/// The command-line entry point, testable in-process. `args` excludes the
/// program name. Returns the process exit code: 0 success, 2 input error,
/// 3 resource cap exceeded, 4 numeric failure.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

} // namespace limid::cli

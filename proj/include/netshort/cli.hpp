#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netshort {

// Entry point of the netshort tool, callable in-process so tests can drive it
// without spawning. `args` excludes the program name. Returns the process
// exit code: 0 success, 2 argument or input parse failure, 3 geometric
// precondition failure, 4 method incompatible with the input or its options,
// 5 file I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netshort

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ekrlab {

// Runs one command line (program name excluded) against the given streams.
// Exit codes are a stable contract:
//   0 all checks passed, 1 usage or input error,
//   2 a verified claim failed (witnesses in the report), 3 resource cap hit.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ekrlab

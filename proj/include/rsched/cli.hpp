#pragma once

#include <iosfwd>

namespace rsched {

/// Command-line entry point. JSON goes to `out`, summaries and usage to `err`.
/// Returns 0 when every check passes, 1 on a failed check, 2 on a usage or
/// input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsched

#pragma once

#include <iosfwd>

namespace entry {

/// Command-line front end. Returns 0 on success, 1 on usage or validation failure
/// and 2 when a run fails.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entry

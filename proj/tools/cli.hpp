#pragma once

#include <ostream>

namespace lexvec::cli {

/// Entry point shared by the `lexvec` binary and in-process tests.
/// Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lexvec::cli

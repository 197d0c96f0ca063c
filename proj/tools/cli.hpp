#pragma once

#include <ostream>

namespace pdem::cli {

/// Runs one `pdem` invocation. Exit codes: 0 success, 1 verification failure,
/// 2 bad flags or parameters.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdem::cli

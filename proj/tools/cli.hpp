#pragma once

#include <iosfwd>

namespace qcpuc::cli {

/// Runs the qcpuc command line. Returns the process exit code: 0 on success,
/// 1 for invalid input or arguments, 2 for numerical failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcpuc::cli

#pragma once

#include <iosfwd>

namespace nclab::cli {

/// Exit code used when a command ran but one of its checks failed.
inline constexpr int kChecksFailed = 2;

/// Entry point of the nclab command-line tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nclab::cli

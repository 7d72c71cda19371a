#pragma once

#include <iosfwd>

namespace zeroprof::cli {

/// Runs one subcommand; the summary (or error) JSON goes to `out`. Returns the exit status:
/// 0 success, 1 contract violation, 2 usage error, 3 a verification check failed.
int run_cli(int argc, const char* const* argv, std::ostream& out);

}  // namespace zeroprof::cli

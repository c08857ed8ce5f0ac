#pragma once

namespace edgesched::cli {

// Subcommands: gen, solve, train, bench, plot.
// Exit codes: 0 success, 1 usage error, 2 infeasibility or runtime failure.
int run(int argc, const char* const* argv);

} // namespace edgesched::cli

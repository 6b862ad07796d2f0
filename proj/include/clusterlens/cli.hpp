#ifndef CLUSTERLENS_CLI_HPP
#define CLUSTERLENS_CLI_HPP

#include <ostream>

/**
 * @file cli.hpp
 * @brief Command line entry point.
 *
 * Subcommands: score, pair, matrix, topics, coherence, grid, histograms, bench and serve.
 * JSON written by the data subcommands is the same canonical payload the HTTP service returns
 * for the same parameters.
 */

namespace clusterlens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line, writing results to `out` and diagnostics to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}

#endif

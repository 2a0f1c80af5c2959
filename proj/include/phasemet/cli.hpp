#pragma once

#include <iosfwd>

namespace phasemet::cli {

/// Entry point for the command-line driver. Subcommands: bounds, fig3,
/// simulate, iterate, verify. Returns 0 on success, 1 on a failed check or
/// I/O error, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phasemet::cli

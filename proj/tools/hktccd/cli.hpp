#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hkt::cli {

/// Runs one hktccd subcommand. `argv` excludes the program name.
/// Returns 0 on success, 2 on configuration or input errors and 3 when a
/// solver or the time integration fails; errors also print one JSON record
/// to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace hkt::cli

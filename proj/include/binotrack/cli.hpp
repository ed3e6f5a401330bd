#pragma once

namespace binotrack {

// Command-line entry point (run / sweep / paperpack subcommands).
// Returns the process exit code: 0 success, 1 usage or input errors,
// 2 simulation abort.
int cli_main(int argc, const char* const* argv);

}  // namespace binotrack

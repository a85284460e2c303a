#pragma once

// Batch front end. Subcommands: solve | converge | evolve | quadify |
// quality | presets. Exit codes: 0 success, 2 config/input error,
// 3 numerical abort.

namespace surfhps {

int run_cli(int argc, const char* const* argv);

}  // namespace surfhps

#pragma once

namespace diffset {

// Full command-line front end. Returns the process exit code: 0 when the
// command ran and the verdict is positive (difference set verified, parameters
// feasible, instances found), 1 for a negative verdict, 2 for usage errors or
// malformed parameters. Output goes to stdout, diagnostics to stderr.
int cli_run(int argc, const char* const* argv);

} // namespace diffset

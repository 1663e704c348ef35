// Command-line front end. Kept as a library entry point so tests can invoke
// commands in-process and compare output files byte for byte.

#pragma once

namespace nnd::cli {

// argv[0] is the program name, as in main(). Returns the process exit code.
int run(int argc, const char* const* argv);

} // namespace nnd::cli

#pragma once

namespace bcl::cli {

/// Full command-line entry point. Returns 0 on success, 2 on invalid flags,
/// 1 on runtime failure. Diagnostics go to stderr.
int run(int argc, char** argv);

}  // namespace bcl::cli

#pragma once

namespace hgail {

// full command-line entry point; returns the process exit status
int run_cli(int argc, const char* const* argv);

}  // namespace hgail

#pragma once

#include <string>
#include <vector>

namespace bzi {

inline constexpr const char* kCliVersion = "0.1.0";

// Outcome of one CLI invocation: the exit code (0 success, 1 check failure,
// 2 usage, 3 I/O or parse trouble) and the single JSON document that goes to
// standard output.
struct CommandResult {
    int exit_code = 0;
    std::string out;
};

// Parses and dispatches one command line (without the program name).
// Never throws; failures are encoded in the result.
CommandResult run_cli(const std::vector<std::string>& args);

}  // namespace bzi

#include <cstdio>
#include <string>
#include <vector>

#include "bzi/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    bzi::CommandResult result = bzi::run_cli(args);
    std::fputs(result.out.c_str(), stdout);
    return result.exit_code;
}

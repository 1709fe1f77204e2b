#include <vector>

#include "hyperq/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hyperq::run_cli(args);
}

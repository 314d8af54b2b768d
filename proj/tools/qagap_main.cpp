#include <vector>
#include <string>

#include "qagap/cli_runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qagap::run_cli(args);
}

#include <iostream>
#include <string>
#include <vector>

#include "sawkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sawkit::run_cli(args, std::cout, std::cerr);
}

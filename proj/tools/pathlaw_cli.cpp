#include <iostream>
#include <string>
#include <vector>

#include "pathlaw/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pathlaw::cli::run(args, std::cout, std::cerr);
}

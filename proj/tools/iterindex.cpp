#include <iostream>

#include "iterindex/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return iterindex::cli::run(args, std::cout, std::cerr);
}

#include <iostream>

#include "ncfilt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ncfilt::cli::run(args, std::cout, std::cerr);
}

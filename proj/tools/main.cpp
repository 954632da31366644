#include <iostream>
#include <string>
#include <vector>

#include "bhe/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bhe::cli::run(args, std::cout, std::cerr);
}

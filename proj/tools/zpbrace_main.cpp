#include <iostream>
#include <string>
#include <vector>

#include "zpbrace/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return zpbrace::cli::run(args, std::cin, std::cout);
}

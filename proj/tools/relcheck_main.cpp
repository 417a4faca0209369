#include <iostream>
#include <string>
#include <vector>

#include "relcheck/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return relcheck::run_cli(args, std::cout, std::cerr);
}

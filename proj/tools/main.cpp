#include <iostream>
#include <string>
#include <vector>

#include "twopoint/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return twopoint::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "bqtsim/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return bqtsim::cli::run(args, std::cout, std::cerr);
}

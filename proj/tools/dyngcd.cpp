#include <iostream>

#include "dyngcd/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return dyngcd::dispatch(args, std::cout, std::cerr);
}

#include "cli.hpp"

#include <iostream>
#include <unistd.h>

int main(int argc, char** argv)
{
    return conical::cli::run(argc, argv, std::cout, std::cerr, isatty(STDOUT_FILENO));
}

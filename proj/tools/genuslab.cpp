#include "genuslab/cli.hpp"

#include <iostream>

int main(int argc, char ** argv)
{
    return genuslab::cli::run(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "lcgeom_cli/cli.hpp"

int main(int argc, char** argv) { return lcg::cli::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "polycc/cli.hpp"

int main(int argc, char** argv) { return polycc::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "leftinv/cli.hpp"

int main(int argc, char** argv) { return leftinv::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "movers/cli.hpp"

int main(int argc, char** argv) { return movers::cli::main(argc, argv, std::cout, std::cerr); }

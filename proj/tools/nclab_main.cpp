#include <iostream>

#include "nclab/cli.hpp"

int main(int argc, char** argv) { return nclab::cli::run(argc, argv, std::cout, std::cerr); }

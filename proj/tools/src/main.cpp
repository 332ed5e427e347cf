#include <iostream>

#include "tcd/cli/run.hpp"

int main(int argc, char** argv) { return tcd::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "chromatope/cli.hpp"

int main(int argc, char** argv) { return chromatope::cli::run(argc, argv, std::cout, std::cerr); }

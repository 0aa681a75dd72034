#include <iostream>

#include "circfta/cli.hpp"

int main(int argc, char** argv) { return circfta::cli::run(argc, argv, std::cout, std::cerr); }

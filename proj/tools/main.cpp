#include <iostream>

#include "fracbs/cli.hpp"

int main(int argc, char** argv) { return fracbs::cli::run(argc, argv, std::cout, std::cerr); }

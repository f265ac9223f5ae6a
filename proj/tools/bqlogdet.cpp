#include "bqlogdet/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return bqlogdet::cli::run(argc, argv, std::cout, std::cerr); }

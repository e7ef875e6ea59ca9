#include <iostream>

#include "arithdyn/cli/commands.hpp"

int main(int argc, char** argv) { return arithdyn::cli::run_cli(argc, argv, std::cout, std::cerr); }

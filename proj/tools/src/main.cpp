#include <iostream>

#include "blocksched_cli/cli.hpp"

int main(int argc, char** argv) { return blocksched::cli::run(argc, argv, std::cout, std::cerr); }

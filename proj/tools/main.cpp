#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return zeroprof::cli::run_cli(argc, argv, std::cout); }

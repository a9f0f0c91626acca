#include <iostream>

#include "vinotab/cli.hpp"

int main(int argc, char** argv) { return vinotab::run_cli(argc, argv, std::cout, std::cerr); }

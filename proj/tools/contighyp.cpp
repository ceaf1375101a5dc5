#include <iostream>

#include "contighyp/cli.hpp"

int main(int argc, char** argv) { return contighyp::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "qcopy/cli.hpp"

int main(int argc, char** argv) { return qcopy::run_cli(argc, argv, std::cout, std::cerr); }

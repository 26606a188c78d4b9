#include <iostream>

#include "kzknot/cli.hpp"

int main(int argc, char** argv) { return kzknot::run_cli(argc, argv, std::cout, std::cerr); }

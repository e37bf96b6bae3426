#include <iostream>

#include "dscmc/cli.hpp"

int main(int argc, char** argv) { return dscmc::run_cli(argc, argv, std::cout, std::cerr); }

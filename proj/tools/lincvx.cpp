#include <iostream>

#include "lincvx/cli.hpp"

int main(int argc, char** argv) { return lincvx::run_cli(argc, argv, std::cout, std::cerr); }

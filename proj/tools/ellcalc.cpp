#include "ell/shell.hpp"

#include <iostream>

int main(int argc, char** argv) { return ell::run_cli(argc, argv, std::cout, std::cerr); }

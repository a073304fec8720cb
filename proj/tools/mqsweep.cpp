#include <iostream>

#include "multipole/sweep.hpp"

int main(int argc, char** argv) { return multipole::run_cli(argc, argv, std::cout, std::cerr); }

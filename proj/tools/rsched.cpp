#include <iostream>

#include "rsched/cli.hpp"

int main(int argc, char** argv) { return rsched::run_cli(argc, argv, std::cout, std::cerr); }

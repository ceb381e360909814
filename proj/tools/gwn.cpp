#include <iostream>

#include "gwn/cli.hpp"

int main(int argc, char** argv) { return gwn::run_cli(argc, argv, std::cout, std::cerr); }

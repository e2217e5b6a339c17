#include <iostream>

#include "vgsd/cli.hpp"

int main(int argc, char** argv) { return vgsd::run_cli(argc, argv, std::cout, std::cerr); }

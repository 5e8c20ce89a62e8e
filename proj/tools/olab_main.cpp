#include <iostream>

#include "olab/cli.hpp"

int main(int argc, char** argv) { return olab::run_cli(argc, argv, std::cout, std::cerr); }

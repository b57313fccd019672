#include "hhf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hhf::cli::run(argc, argv, std::cout, std::cerr); }

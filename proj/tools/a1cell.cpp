#include <iostream>

#include "a1cell/cli.hpp"

int main(int argc, char **argv) { return a1cell::cli::run(argc, argv, std::cout, std::cerr); }

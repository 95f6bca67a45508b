#include <iostream>

#include "cwlab/cli.hpp"

int main(int argc, char** argv) { return cwlab::cli::main_entry(argc, argv, std::cout, std::cerr); }

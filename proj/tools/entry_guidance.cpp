#include <iostream>

#include "entry/cli.hpp"

int main(int argc, char** argv) { return entry::run_cli(argc, argv, std::cout, std::cerr); }

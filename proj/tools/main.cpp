#include <iostream>

#include "hlp/cli.hpp"

int main(int argc, char** argv) { return hlp::run_cli(argc, argv, std::cout, std::cerr); }

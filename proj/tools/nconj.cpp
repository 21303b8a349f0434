#include <iostream>

#include "nconj/cli.hpp"

int main(int argc, char** argv) { return nconj::run_cli(argc, argv, std::cin, std::cout, std::cerr); }

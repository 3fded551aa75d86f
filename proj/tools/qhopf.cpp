#include <iostream>

#include "qhopf/cli.hpp"

int main(int argc, char** argv) { return qhopf::run_cli(argc, argv, std::cout, std::cerr); }

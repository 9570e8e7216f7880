#include <iostream>

#include "netctrl/cli.hpp"

int main(int argc, char** argv) { return netctrl::cli::run(argc, argv, std::cout, std::cerr); }

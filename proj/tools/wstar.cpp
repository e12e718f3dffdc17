#include <iostream>

#include "wstar/cli.hpp"

int main(int argc, char** argv) { return wstar::run_cli(argc, argv, std::cout, std::cerr); }

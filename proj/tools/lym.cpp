#include <iostream>

#include "lym/cli.hpp"

int main(int argc, char** argv) { return lym::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "sconvex/cli.hpp"

int main(int argc, char** argv) { return sconvex::cli::dispatch(argc, argv, std::cout, std::cerr); }

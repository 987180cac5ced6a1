#include <iostream>

#include "eeb/cli/app.hpp"

int main(int argc, char** argv) { return eeb::cli::run(argc, argv, std::cout, std::cerr); }

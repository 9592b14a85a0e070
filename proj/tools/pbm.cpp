#include <iostream>

#include "pbm/cli.hpp"

int main(int argc, char** argv) { return pbm::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "billiards/cli/cli.hpp"

int main(int argc, char** argv) { return billiards::cli_main(argc, argv, std::cout, std::cerr); }

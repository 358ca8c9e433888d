#include <iostream>

#include "caustics/cli.hpp"

int main(int argc, char** argv) { return caustics::cli::main_entry(argc, argv, std::cout, std::cerr); }

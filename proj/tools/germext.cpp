#include <iostream>

#include "germext/cli.hpp"

int main(int argc, char** argv) { return germext::cli::main_entry(argc, argv, std::cout, std::cerr); }

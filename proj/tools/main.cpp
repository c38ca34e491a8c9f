#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return lbl2vec::cli::run(argc, argv, std::cout, std::cerr); }

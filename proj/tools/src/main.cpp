#include <iostream>

#include "kickedtop_cli/run.hpp"

int main(int argc, char** argv) {
  return qkt::cli::main_entry(argc, argv, std::cout, std::cerr);
}

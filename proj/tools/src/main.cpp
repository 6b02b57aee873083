#include <iostream>

#include "stabpres_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stabpres::cli::run_cli(args, std::cout, std::cerr);
}

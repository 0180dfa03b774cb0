#include <iostream>

#include "normgen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return normgen::run_cli(args, std::cout, std::cerr);
}

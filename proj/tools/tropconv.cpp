#include <iostream>

#include "tropconv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tropconv::run_cli(args, std::cout, std::cerr);
}

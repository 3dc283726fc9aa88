#include <iostream>
#include <string>
#include <vector>

#include "dualred/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dualred::run_cli(args, std::cout, std::cerr);
}

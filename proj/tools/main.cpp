#include <iostream>
#include <string>
#include <vector>

#include "splinedim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return splinedim::run_cli(args, std::cout, std::cerr);
}

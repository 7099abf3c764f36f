#include <iostream>
#include <string>
#include <vector>

#include "hyperdyn/tools/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return hyperdyn::tools::run_cli(args, std::cout, std::cerr);
}

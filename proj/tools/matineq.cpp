#include <iostream>
#include <string>
#include <vector>

#include "matineq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return matineq::run_cli(args, std::cout, std::cerr);
}

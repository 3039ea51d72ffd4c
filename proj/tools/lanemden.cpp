#include <iostream>
#include <string>
#include <vector>

#include "lanemden/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return lanemden::run_cli(args, std::cout, std::cerr);
}

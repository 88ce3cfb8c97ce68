#include <iostream>
#include <string>
#include <vector>

#include "spherenet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return spherenet::run_cli(args, std::cout, std::cerr);
}

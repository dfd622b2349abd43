#include <iostream>
#include <string>
#include <vector>

#include "gshift/cli_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gshift::run_command(args, std::cout, std::cerr);
}

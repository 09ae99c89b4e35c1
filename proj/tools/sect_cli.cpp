#include <iostream>
#include <vector>

#include "sect/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sect::run_cli(args, std::cout, std::cerr);
}

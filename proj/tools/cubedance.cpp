#include <iostream>
#include <string>
#include <vector>

#include "cubedance/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cubedance::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "ekrlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ekrlab::run_cli(args, std::cout, std::cerr);
}

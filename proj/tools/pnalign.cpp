#include <iostream>

#include "pnalign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pnalign::run_cli(args, std::cout, std::cerr);
}

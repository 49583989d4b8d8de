#include "cscforge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cscforge::cli::run(args, std::cout, std::cerr);
}

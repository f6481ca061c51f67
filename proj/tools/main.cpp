#include <iostream>
#include <string>
#include <vector>

#include "tfair/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tfair::cli::run(args, std::cout, std::cerr);
}

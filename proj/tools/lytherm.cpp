#include <iostream>
#include <string>
#include <vector>

#include "lytherm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lytherm::cli::run(args, std::cout, std::cerr);
}

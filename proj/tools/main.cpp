#include <iostream>

#include "oqa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return oqa::cli::run(args, std::cin, std::cout, std::cerr);
}

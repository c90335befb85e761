#include <iostream>

#include "mepprove/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mepprove::cli::run(args, std::cout, std::cerr);
}

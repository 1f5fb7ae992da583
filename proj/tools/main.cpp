#include <iostream>

#include "nsdecomp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = nsdecomp::run_cli(args, std::cin);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

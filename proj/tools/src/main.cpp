#include <iostream>

#include "k3cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return k3::cli::run_command(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "cornerq_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cornerq::cli::run(args, std::cout, std::cerr);
}

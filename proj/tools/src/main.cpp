#include <iostream>
#include <string>
#include <vector>

#include "perphylo/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return perphylo::cli::run(args, std::cout, std::cerr);
}

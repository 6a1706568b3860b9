#include <iostream>
#include <string>
#include <vector>

#include "hfcone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hfcone::cli::run(args, std::cout, std::cerr);
}

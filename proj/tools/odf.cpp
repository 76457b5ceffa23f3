#include <iostream>
#include <string>
#include <vector>

#include "odf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return odf::cli::run(args, std::cout, std::cerr);
}

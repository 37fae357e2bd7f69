#include <iostream>
#include <string>
#include <vector>

#include "galcurve/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return galcurve::cli::run(args, std::cout, std::cerr);
}

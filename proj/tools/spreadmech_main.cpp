#include <iostream>
#include <string>
#include <vector>

#include "spread/audit.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spread::run_cli(args, std::cout, std::cerr);
}

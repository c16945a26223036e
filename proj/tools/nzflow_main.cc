#include <iostream>
#include <string>
#include <vector>

#include "nzflow/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nzflow::cli::run(args, std::cin, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "epithresh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epithresh::cli_dispatch(args, std::cout, std::cerr);
}

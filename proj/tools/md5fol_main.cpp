#include <iostream>
#include <string>
#include <vector>

#include "md5fol/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return md5fol::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "singcert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return singcert::run_cli(args, std::cout, std::cerr);
}
